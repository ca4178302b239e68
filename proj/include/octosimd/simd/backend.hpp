#pragma once

// Name-keyed registry of SIMD backends. "scalar" (W=1) is always present
// and is the speedup baseline; "emulated{2,4,8,16}" are lane-loop types;
// "native" exists only when the build has <experimental/simd>.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "octosimd/simd/simd.hpp"

namespace octosimd::simd {

enum class BackendKind { scalar, emulated2, emulated4, emulated8, emulated16, native };

struct Backend {
  BackendKind kind;
  std::string name;
  std::size_t width;

  friend bool operator==(const Backend& a, const Backend& b) { return a.kind == b.kind; }
};

const std::vector<Backend>& available_backends();

// Throws std::invalid_argument listing the valid names.
const Backend& find_backend(std::string_view name);

const Backend& scalar_backend();

std::size_t lane_count(std::string_view name);

bool has_native_backend();

std::string backend_names();

// Invokes f.template operator()<V>() with the vector type of `backend`.
template <class F>
decltype(auto) with_backend(const Backend& backend, F&& f) {
  switch (backend.kind) {
    case BackendKind::scalar:
      return f.template operator()<Vec<1>>();
    case BackendKind::emulated2:
      return f.template operator()<Vec<2>>();
    case BackendKind::emulated4:
      return f.template operator()<Vec<4>>();
    case BackendKind::emulated8:
      return f.template operator()<Vec<8>>();
    case BackendKind::emulated16:
      return f.template operator()<Vec<16>>();
    case BackendKind::native:
#if defined(OCTOSIMD_HAVE_NATIVE)
      return f.template operator()<NativeVec>();
#else
      break;
#endif
  }
  throw std::invalid_argument("backend '" + backend.name + "' is not available in this build");
}

}  // namespace octosimd::simd
