#include "skewfold/reflection.hpp"

#include "skewfold/path_engine.hpp"

#include <algorithm>
#include <cmath>

namespace skewfold {

ReflectionResult skorokhod_reflect(const SamplePath& path) {
    if (path.values.empty() || path.values.front() != 0.0) {
        throw DomainError("skorokhod_reflect: path must start at 0");
    }
    ReflectionResult out{SamplePath(path.grid), SamplePath(path.grid)};
    double running = 0.0;
    for (std::size_t i = 0; i < path.size(); ++i) {
        running = std::max(running, -path[i]);
        out.pushing[i] = running;
        out.reflected[i] = path[i] + running;
    }
    return out;
}

SamplePath conventional_reflect(const SamplePath& path) {
    SamplePath out(path.grid);
    for (std::size_t i = 0; i < path.size(); ++i) {
        out[i] = std::abs(path[i]);
    }
    return out;
}

double sign_of(double x, SignConvention convention) {
    if (x > 0.0) return 1.0;
    if (x < 0.0) return -1.0;
    return convention == SignConvention::symmetric ? 0.0 : -1.0;
}

SamplePath levy_transform(const SamplePath& path, SignConvention convention) {
    SamplePath signs(path.grid);
    for (std::size_t i = 0; i < path.size(); ++i) {
        signs[i] = sign_of(path[i], convention);
    }
    return ito_integral(signs, path);
}

}  // namespace skewfold
