#include "tscale/residual.hpp"

#include <cmath>

#include "tscale/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tscale {

ResidualReport make_report(std::string identity, std::vector<double> t,
                           std::vector<double> residual, double tol, std::size_t skipped,
                           std::vector<double> reference) {
    ResidualReport r;
    r.identity = std::move(identity);
    r.tol = tol;
    r.skipped = skipped;
    for (std::size_t i = 0; i < residual.size(); ++i) {
        if (std::isnan(residual[i])) {
            r.max_residual = residual[i];
            r.argmax_t = t[i];
            break;
        }
        if (residual[i] > r.max_residual || i == 0) {
            r.max_residual = residual[i];
            r.argmax_t = t[i];
        }
    }
    r.t = std::move(t);
    r.residual = std::move(residual);
    r.reference = std::move(reference);
    return r;
}

namespace kernels {

int max_threads() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace kernels
}  // namespace tscale
