#include "bergman/rng.hpp"

namespace bergman {
namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t replica, StreamPhase phase)
    : key_(splitmix64(splitmix64(seed) ^ splitmix64(replica ^ 0x5851f42d4c957f2dULL) ^
                      (static_cast<std::uint64_t>(phase) * 0xd1342543de82ef95ULL))) {}

RandomStream::result_type RandomStream::operator()() {
  return splitmix64(key_ + (counter_++) * kGolden);
}

double RandomStream::uniform() {
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace bergman
