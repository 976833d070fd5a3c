// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

namespace optsample {

/// Effective worker count: `requested` if positive, otherwise hardware
/// concurrency, in both cases capped by the OPTSAMPLE_THREADS environment
/// variable when it is set.
int resolve_thread_count(int requested);

/// Runs fn(0..count-1), possibly concurrently. Each index must write only to
/// its own output slot; exceptions are captured and rethrown on the caller.
void parallel_for(int count, const std::function<void(int)>& fn, int threads);

}  // namespace optsample
