#ifndef LIECR_TRANSVERSALITY_HPP
#define LIECR_TRANSVERSALITY_HPP

// The real matrices A and B built from a morphism matrix M, and the
// determinant / rank conditions on them.

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "liecr/errors.hpp"
#include "liecr/linalg.hpp"
#include "liecr/report.hpp"

namespace liecr {

enum class Parity { even, odd };

/// Lambda^0(z) = M z with M complex q x l.
struct MorphismSpec {
  int q = 0;
  int l = 0;
  Eigen::MatrixXcd M;

  MorphismSpec() = default;
  MorphismSpec(int q_, int l_, Eigen::MatrixXcd m) : q(q_), l(l_), M(std::move(m)) { validate(); }
  explicit MorphismSpec(Eigen::MatrixXcd m)
      : q(static_cast<int>(m.rows())), l(static_cast<int>(m.cols())), M(std::move(m)) {
    validate();
  }

  void validate() const {
    if (l < 1) throw ArgumentError("morphism needs l >= 1");
    if (M.rows() != q || M.cols() != l) {
      throw ArgumentError("M has shape " + std::to_string(M.rows()) + "x" + std::to_string(M.cols()) +
                          ", expected " + std::to_string(q) + "x" + std::to_string(l));
    }
    if (q != 2 * l && q != 2 * l - 1) {
      throw ArgumentError("q = " + std::to_string(q) + " must be 2l or 2l-1 for l = " + std::to_string(l));
    }
    if (!M.allFinite()) throw ArgumentError("M has non-finite entries");
  }

  Parity parity() const { return q == 2 * l ? Parity::even : Parity::odd; }
};

struct TransversalityMatrices {
  Eigen::MatrixXd A;  // q x 2l
  Eigen::MatrixXd B;  // q x (2l - 2)
};

struct ConditionReport {
  std::string condition;  // "I", "II" or "oracle"
  bool pass = false;
  bool near_degenerate = false;
  double threshold = 0.0;
  double det = 0.0;  // condition I
  int rank_A = 0;
  int rank_B = 0;
  Eigen::VectorXd sv_A;
  Eigen::VectorXd sv_B;
  int kernel_full = -1;        // oracle
  int kernel_restricted = -1;  // oracle, odd case
  std::string message;

  Json to_json() const {
    Json out;
    out["condition"] = condition;
    out["pass"] = pass;
    out["near_degenerate"] = near_degenerate;
    out["threshold"] = threshold;
    if (condition == "I") out["det"] = linalg::snap(det);
    if (condition == "II") {
      out["rank_A"] = rank_A;
      out["rank_B"] = rank_B;
      out["singular_values_A"] = std::vector<double>(sv_A.data(), sv_A.data() + sv_A.size());
      out["singular_values_B"] = std::vector<double>(sv_B.data(), sv_B.data() + sv_B.size());
    }
    if (condition == "oracle") {
      out["kernel_dim_full"] = kernel_full;
      if (kernel_restricted >= 0) out["kernel_dim_restricted"] = kernel_restricted;
    }
    if (!message.empty()) out["message"] = message;
    return out;
  }

  VerificationReport to_report() const {
    VerificationReport rep(condition == "oracle" ? "oracle_kernel_check" : "condition_" + condition);
    rep.data = to_json();
    if (!pass) rep.fail(message.empty() ? "condition " + condition + " fails" : message);
    return rep;
  }
};

namespace detail {
/// True when x lies within a factor 10 of the decision threshold.
inline bool near_threshold(double x, double thr) { return thr > 0.0 && x <= 10.0 * thr && x >= thr / 10.0; }
}  // namespace detail

/// Columns (2j, 2j+1) of A are (Re M_j, -Im M_j); B drops the first pair.
inline TransversalityMatrices build_matrices(const MorphismSpec& spec) {
  spec.validate();
  TransversalityMatrices out;
  out.A.resize(spec.q, 2 * spec.l);
  for (int j = 0; j < spec.l; ++j) {
    out.A.col(2 * j) = spec.M.col(j).real();
    out.A.col(2 * j + 1) = -spec.M.col(j).imag();
  }
  out.B = out.A.rightCols(2 * spec.l - 2);
  return out;
}

/// det A != 0, against tolerance times the product of the row norms.
inline ConditionReport check_condition_I(const MorphismSpec& spec) {
  spec.validate();
  if (spec.parity() != Parity::even) throw WrongConditionError("condition I needs q = 2l (even case)");
  const auto mats = build_matrices(spec);
  ConditionReport rep;
  rep.condition = "I";
  rep.det = mats.A.determinant();
  double rows = 1.0;
  for (Eigen::Index i = 0; i < mats.A.rows(); ++i) rows *= mats.A.row(i).norm();
  rep.threshold = tolerance() * rows;
  rep.pass = std::abs(rep.det) > rep.threshold && rows > 0.0;
  rep.near_degenerate = detail::near_threshold(std::abs(rep.det), rep.threshold);
  if (!rep.pass) rep.message = "det A vanishes (|det| = " + std::to_string(std::abs(rep.det)) + ")";
  return rep;
}

/// rank A = q and rank B = q - 1; both ranks against tolerance * sigma_max(A).
inline ConditionReport check_condition_II(const MorphismSpec& spec) {
  spec.validate();
  if (spec.parity() != Parity::odd) throw WrongConditionError("condition II needs q = 2l - 1 (odd case)");
  const auto mats = build_matrices(spec);
  ConditionReport rep;
  rep.condition = "II";
  rep.sv_A = linalg::singular_values(mats.A);
  rep.sv_B = linalg::singular_values(mats.B);
  const double scale = rep.sv_A.size() > 0 ? rep.sv_A(0) : 0.0;
  rep.threshold = tolerance() * scale;
  rep.rank_A = scale > 0.0 ? linalg::rank_from_singular_values(rep.sv_A, tolerance(), scale) : 0;
  rep.rank_B = scale > 0.0 ? linalg::rank_from_singular_values(rep.sv_B, tolerance(), scale) : 0;
  rep.pass = rep.rank_A == spec.q && rep.rank_B == spec.q - 1;
  if (rep.sv_A.size() >= spec.q) {
    rep.near_degenerate = rep.near_degenerate || detail::near_threshold(rep.sv_A(spec.q - 1), rep.threshold);
  }
  if (spec.q >= 2 && rep.sv_B.size() >= spec.q - 1) {
    rep.near_degenerate = rep.near_degenerate || detail::near_threshold(rep.sv_B(spec.q - 2), rep.threshold);
  }
  if (!rep.pass) {
    rep.message = "rank A = " + std::to_string(rep.rank_A) + " (need " + std::to_string(spec.q) + "), rank B = " +
                  std::to_string(rep.rank_B) + " (need " + std::to_string(spec.q - 1) + ")";
  }
  return rep;
}

inline ConditionReport check_condition(const MorphismSpec& spec) {
  return spec.parity() == Parity::even ? check_condition_I(spec) : check_condition_II(spec);
}

namespace detail {
/// Kernel dimension of a real q x m matrix via full-pivot LU with an
/// absolute pivot threshold.
inline int lu_kernel_dim(const Eigen::MatrixXd& c, double abs_threshold) {
  if (c.cols() == 0) return 0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(c);
  const Eigen::MatrixXd& packed = lu.matrixLU();
  int pivots = 0;
  for (Eigen::Index i = 0; i < std::min(packed.rows(), packed.cols()); ++i) {
    if (std::abs(packed(i, i)) > abs_threshold) ++pivots;
  }
  return static_cast<int>(c.cols()) - pivots;
}
}  // namespace detail

/// Solves Re(M z) = 0 over real z in R^(2l) directly and compares the
/// solution space with what the conditions predict: {0} in the even case;
/// {0} with z_1 = 0 and a line without restriction in the odd case.
inline ConditionReport oracle_kernel_check(const MorphismSpec& spec) {
  spec.validate();
  // coefficient columns by evaluating Re(M z) on the real directions e_j, i e_j
  Eigen::MatrixXd coeff(spec.q, 2 * spec.l);
  for (int j = 0; j < spec.l; ++j) {
    Eigen::VectorXcd z = Eigen::VectorXcd::Zero(spec.l);
    z(j) = 1.0;
    coeff.col(2 * j) = (spec.M * z).real();
    z(j) = std::complex<double>(0.0, 1.0);
    coeff.col(2 * j + 1) = (spec.M * z).real();
  }
  ConditionReport rep;
  rep.condition = "oracle";
  rep.threshold = tolerance() * coeff.cwiseAbs().maxCoeff();
  rep.kernel_full = detail::lu_kernel_dim(coeff, rep.threshold);
  if (rep.threshold == 0.0) rep.kernel_full = 2 * spec.l;
  if (spec.parity() == Parity::even) {
    rep.pass = rep.kernel_full == 0;
    if (!rep.pass) rep.message = "Re(Mz) = 0 has a " + std::to_string(rep.kernel_full) + "-dim solution space";
  } else {
    const Eigen::MatrixXd restricted = coeff.rightCols(2 * spec.l - 2);
    rep.kernel_restricted = rep.threshold == 0.0 ? 2 * spec.l - 2 : detail::lu_kernel_dim(restricted, rep.threshold);
    rep.pass = rep.kernel_full == 1 && rep.kernel_restricted == 0;
    if (!rep.pass) {
      rep.message = "solution spaces have dims " + std::to_string(rep.kernel_full) + " (full) and " +
                    std::to_string(rep.kernel_restricted) + " (z_1 = 0), expected 1 and 0";
    }
  }
  return rep;
}

inline Json morphism_to_json(const MorphismSpec& spec) {
  Json out;
  out["q"] = spec.q;
  out["l"] = spec.l;
  Json m = Json::array();
  for (int i = 0; i < spec.q; ++i)
    for (int j = 0; j < spec.l; ++j) m.push_back(complex_to_json(spec.M(i, j)));
  out["M"] = std::move(m);
  return out;
}

/// { "q": q, "l": l, "M": [[re, im], ...] } with M row-major.
inline MorphismSpec morphism_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("q") || !j.contains("l") || !j.contains("M")) {
    throw ArgumentError("morphism JSON needs keys q, l, M");
  }
  const int q = j.at("q").get<int>();
  const int l = j.at("l").get<int>();
  if (q < 1 || l < 1) throw ArgumentError("q and l must be positive");
  const Json& m = j.at("M");
  if (!m.is_array() || m.size() != static_cast<std::size_t>(q) * l) {
    throw ArgumentError("M must list q*l = " + std::to_string(q * l) + " entries");
  }
  Eigen::MatrixXcd M(q, l);
  for (int r = 0; r < q; ++r) {
    for (int c = 0; c < l; ++c) {
      const Json& e = m[static_cast<std::size_t>(r * l + c)];
      if (e.is_number()) {
        M(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        M(r, c) = {e[0].get<double>(), e[1].get<double>()};
      } else {
        throw ArgumentError("M entries must be numbers or [re, im] pairs");
      }
    }
  }
  return MorphismSpec(q, l, std::move(M));
}

}  // namespace liecr

#endif  // LIECR_TRANSVERSALITY_HPP
