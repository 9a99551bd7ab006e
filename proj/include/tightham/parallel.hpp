#pragma once

#include <functional>

namespace tightham {

// TIGHTHAM_THREADS if set and positive, else hardware concurrency
int thread_count();

// runs fn(i) for i in [0, count); blocks until done; fn must only touch slot i
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace tightham
