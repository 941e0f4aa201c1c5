/**
 * @file  parallel.hpp
 * @brief Execution policy and the OpenMP loop driver used by every batch
 *        kernel. Execution::Serial is the reference path kept for testing:
 *        both paths write results by index, so their outputs are identical.
 */

#pragma once

#include <cstddef>
#include <functional>

namespace ppps {

enum class Execution { Serial, Parallel };

/// Calls body(i) for i in [0, count). The parallel path uses an OpenMP
/// dynamic schedule and degrades to a serial loop inside an enclosing
/// parallel region.
void parallel_for(std::size_t count, Execution execution,
                  const std::function<void(std::size_t)>& body);

/// Number of OpenMP threads available to the parallel path.
int max_threads();

}  // namespace ppps
