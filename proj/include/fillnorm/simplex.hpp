#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace fillnorm {

using Rational = boost::multiprecision::cpp_rational;
using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

// min c'x subject to Ax = b, x >= 0, in exact rational arithmetic.
struct LpProblem {
    RatMatrix A;
    RatVector b;
    RatVector c;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value;
    RatVector x;
};

// Two-phase primal simplex with Bland's anti-cycling rule. No floating point
// anywhere; cycling cannot occur, so the solve always terminates.
LpResult solve_lp(const LpProblem& p);

}  // namespace fillnorm
