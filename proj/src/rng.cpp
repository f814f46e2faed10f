#include "stablereg/rng.hpp"

namespace stablereg {

StreamRng StreamRng::derive(std::uint64_t master,
                            std::initializer_list<std::uint64_t> indices) noexcept {
  std::uint64_t key = mix(master ^ 0x6a09e667f3bcc909ULL);
  for (std::uint64_t idx : indices) {
    key = mix(key ^ mix(idx + 0x9e3779b97f4a7c15ULL));
  }
  return StreamRng(key);
}

}  // namespace stablereg
