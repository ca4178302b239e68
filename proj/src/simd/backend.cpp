#include "octosimd/simd/backend.hpp"

namespace octosimd::simd {

const std::vector<Backend>& available_backends() {
  static const std::vector<Backend> backends = [] {
    std::vector<Backend> b{
        {BackendKind::scalar, "scalar", 1},         {BackendKind::emulated2, "emulated2", 2},
        {BackendKind::emulated4, "emulated4", 4},   {BackendKind::emulated8, "emulated8", 8},
        {BackendKind::emulated16, "emulated16", 16},
    };
#if defined(OCTOSIMD_HAVE_NATIVE)
    b.push_back({BackendKind::native, "native", NativeVec::width});
#endif
    return b;
  }();
  return backends;
}

std::string backend_names() {
  std::string names;
  for (const auto& b : available_backends()) {
    if (!names.empty()) names += ", ";
    names += b.name;
  }
  return names;
}

const Backend& find_backend(std::string_view name) {
  for (const auto& b : available_backends()) {
    if (b.name == name) return b;
  }
  throw std::invalid_argument("unknown backend '" + std::string(name) + "' (valid: " + backend_names() + ")");
}

const Backend& scalar_backend() { return available_backends().front(); }

std::size_t lane_count(std::string_view name) { return find_backend(name).width; }

bool has_native_backend() {
#if defined(OCTOSIMD_HAVE_NATIVE)
  return true;
#else
  return false;
#endif
}

}  // namespace octosimd::simd
