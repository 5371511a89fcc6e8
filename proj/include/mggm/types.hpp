#pragma once

#include <Eigen/Dense>

namespace mggm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

// Which precision matrix a run targets: the q x q column graph (Gamma) or the
// p x p row graph (Omega). The Omega axis is the same procedure applied to the
// transposed observations.
enum class Axis { gamma, omega };

inline const char* axis_name(Axis a) { return a == Axis::gamma ? "gamma" : "omega"; }

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mggm
