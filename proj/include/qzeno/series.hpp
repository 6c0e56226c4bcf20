// series.hpp — sampled complex survival amplitude on a time grid

#pragma once

#include "qzeno/types.hpp"

#include <string>

namespace qzeno {

// A(t) samples on an ascending time grid. `source` tags the originating
// model so emitted artifacts stay traceable.
template <typename Scalar>
struct AmplitudeSeries {
    VectorX<Scalar> times;
    VectorXC<Scalar> values;
    std::string source;

    Index size() const { return times.size(); }
};

} // namespace qzeno
