#pragma once

#include "skewfold/reflection.hpp"
#include "skewfold/types.hpp"

namespace skewfold {

enum class LocalTimeMethod { occupation, upcrossing, tanaka };
enum class LocalTimeSide { right, symmetric };

/// Nondecreasing estimate of local time at the origin, tagged by how it was
/// produced.
struct LocalTimeCurve {
    SamplePath values;
    LocalTimeMethod method = LocalTimeMethod::occupation;
    LocalTimeSide side = LocalTimeSide::right;
    double epsilon = 0.0;

    double total() const { return values.back(); }
};

/// Grid-consistent default bandwidth sqrt(dt).
double default_bandwidth(const TimeGrid& grid);

/// Occupation-density estimator: right side accumulates
/// (1/2eps) 1{0 < U[i] < eps} (qv[i+1] - qv[i]) over left endpoints; the
/// symmetric side averages the right estimates for U and -U at the same eps.
/// The lower bound is strict: exact grid zeros carry qv mass comparable to
/// the band for reflected paths, while the continuous-time zero set is null.
LocalTimeCurve occupation_local_time(const SamplePath& path, const SamplePath& qv,
                                     double epsilon, LocalTimeSide side);

/// Upcrossing estimator eps * N(t, eps), where N counts completed excursions
/// from the zero level (values <= at_zero_tol) up through eps.
LocalTimeCurve upcrossing_local_time(const SamplePath& folded, double epsilon,
                                     double at_zero_tol = 0.0);

/// Tanaka-formula estimator for the local time of |X| at the origin:
/// L[k] = |X[k]| - |X[0]| - (int sgn(X) dX)[k], clipped at its running
/// maximum to keep the output nondecreasing.  For a signed path X this is
/// twice the right local time of X itself.
LocalTimeCurve tanaka_local_time(const SamplePath& path,
                                 SignConvention convention = SignConvention::symmetric);

}  // namespace skewfold
