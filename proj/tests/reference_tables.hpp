#pragma once

#include <array>
#include <cstdint>

// Expected planner grids at eps = 0.005 with s rounded to 2.58.
// Rows n = 1..10, columns q = 2, 3, 5, 7, 11, 13, 17; 0 marks "inf".
namespace reference {

inline constexpr std::array<std::array<std::uint64_t, 7>, 10> kSamples{{
    {0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 28373, 2355, 1908, 1669},
    {0, 0, 1103, 647, 634, 682, 803},
    {0, 1705, 367, 369, 482, 551, 695},
    {0, 384, 259, 308, 447, 521, 673},
    {4457, 224, 225, 289, 437, 513, 667},
    {619, 173, 212, 283, 434, 511, 666},
    {295, 151, 206, 280, 433, 511, 666},
    {197, 140, 204, 279, 433, 511, 665},
}};

inline constexpr std::array<std::array<std::uint64_t, 7>, 10> kThresholds{{
    {0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 5607, 301, 207, 139},
    {0, 0, 303, 128, 81, 74, 66},
    {0, 754, 101, 73, 61, 59, 57},
    {0, 170, 71, 61, 57, 56, 55},
    {2821, 99, 61, 57, 55, 55, 55},
    {391, 76, 58, 56, 55, 55, 55},
    {186, 67, 56, 55, 55, 55, 55},
    {125, 62, 56, 55, 55, 55, 55},
}};

}  // namespace reference
