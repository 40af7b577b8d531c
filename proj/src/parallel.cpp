#include "pulsespec/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace pulsespec {

int worker_count() {
    const int fallback = omp_get_max_threads();
    const char* env = std::getenv("PULSESPEC_THREADS");
    if (env == nullptr || *env == '\0') return fallback;
    try {
        const int n = std::stoi(env);
        return n > 0 ? n : fallback;
    } catch (const std::exception&) {
        return fallback;
    }
}

}  // namespace pulsespec
