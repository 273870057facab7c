#include "superframe/quotient.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <sstream>

namespace superframe {
namespace {

void require_pair_shape(const IntMatrix& m, const IntMatrix& p) {
  if (!m.square() || !p.square() || m.rows() != p.rows())
    throw Error(ErrorKind::ShapeMismatch, "M and P must be square of equal size");
  check_dimension(m.rows());
}

std::size_t checked_order(const IntMatrix& p) {
  const Integer det = abs(determinant(p));
  if (det == 0) throw Error(ErrorKind::SingularMatrix, "P = " + format_matrix(p) + " has det 0");
  if (det > Integer(static_cast<unsigned long>(kMaxQuotientOrder)))
    throw Error(ErrorKind::SystemTooLarge, "|det P| = " + to_string(det) + " exceeds the enumeration limit");
  return det.get_ui();
}

std::string describe(const Permutation& perm) {
  std::string s = "[";
  for (std::size_t i = 0; i < perm.size(); ++i) s += (i ? "," : "") + std::to_string(perm[i]);
  return s + "]";
}

}  // namespace

void check_expansive(const IntMatrix& m, double tol) {
  const std::size_t d = m.rows();
  Eigen::MatrixXd a(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a(i, j) = m(i, j).get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const std::complex<double> lambda = solver.eigenvalues()(i);
    if (std::abs(lambda) <= 1.0 + tol) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "M = " << format_matrix(m) << " has eigenvalue " << lambda.real()
          << (lambda.imag() < 0 ? "-" : "+") << std::abs(lambda.imag()) << "i with |lambda| = " << std::abs(lambda);
      throw Error(ErrorKind::NotExpansive, msg.str());
    }
  }
}

AdmissibilityReport check_admissible(const IntMatrix& m, const IntMatrix& p) {
  require_pair_shape(m, p);
  const Integer det_m = determinant(m);
  if (det_m == 0) throw Error(ErrorKind::SingularMatrix, "M = " + format_matrix(m) + " has det 0");
  const Integer det_p = determinant(p);
  if (det_p == 0) throw Error(ErrorKind::SingularMatrix, "P = " + format_matrix(p) + " has det 0");
  check_expansive(m);

  const RatMatrix p_inv = inverse_rational(p);
  const RatMatrix m_prime = to_rational(p) * to_rational(m) * p_inv;
  const bool integral = is_integral(m_prime);
  LatticeBasis meet = lattice_intersection(LatticeBasis(inverse_rational(m)), LatticeBasis(p_inv));
  const bool meets_in_z = meet == LatticeBasis::integer_lattice(m.rows());
  return AdmissibilityReport{integral && meets_in_z, integral, meets_in_z, m_prime, std::move(meet), abs(det_p)};
}

std::vector<RatVector> coset_representatives(const IntMatrix& p) {
  if (!p.square()) throw Error(ErrorKind::ShapeMismatch, "P must be square");
  check_dimension(p.rows());
  const std::size_t order = checked_order(p);
  const std::size_t d = p.rows();
  // U P V = S  =>  P^-1 Z^d = V S^-1 Z^d.
  const SmithForm snf = smith_normal_form(p);
  std::vector<unsigned long> moduli(d);
  for (std::size_t i = 0; i < d; ++i) moduli[i] = snf.S(i, i).get_ui();

  std::vector<RatVector> reps;
  reps.reserve(order);
  std::vector<unsigned long> digits(d, 0);
  for (std::size_t n = 0; n < order; ++n) {
    RatVector scaled(d);
    for (std::size_t i = 0; i < d; ++i) {
      scaled[i] = Rational(static_cast<long>(digits[i]), static_cast<long>(moduli[i]));
      scaled[i].canonicalize();
    }
    reps.push_back(frac(to_rational(snf.V) * scaled));
    // Increment with the last digit fastest, so the list is lexicographic.
    for (std::size_t i = d; i-- > 0;) {
      if (++digits[i] < moduli[i]) break;
      digits[i] = 0;
    }
  }
  return reps;
}

std::vector<RatVector> dual_representatives(const IntMatrix& p) { return coset_representatives(p.transpose()); }

RepresentativeIndex::RepresentativeIndex(const std::vector<RatVector>& reps) {
  for (std::size_t i = 0; i < reps.size(); ++i) index_.emplace(frac(reps[i]), i);
}

std::optional<std::size_t> RepresentativeIndex::find(const RatVector& x) const {
  const auto it = index_.find(frac(x));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Permutation induced_permutation(const IntMatrix& a, const std::vector<RatVector>& reps) {
  const RepresentativeIndex lookup(reps);
  const RatMatrix ar = to_rational(a);
  Permutation perm(reps.size());
  std::vector<bool> hit(reps.size(), false);
  for (std::size_t r = 0; r < reps.size(); ++r) {
    const RatVector image = ar * reps[r];
    const auto idx = lookup.find(image);
    if (!idx)
      throw Error(ErrorKind::NotAPermutation,
                  "image of representative " + std::to_string(r) + " (" + format_vector(frac(image)) +
                      ") is not a listed coset");
    if (hit[*idx])
      throw Error(ErrorKind::NotAPermutation,
                  "matrix " + format_matrix(a) + " is not injective on the cosets (collision at " +
                      std::to_string(*idx) + ")");
    hit[*idx] = true;
    perm[r] = *idx;
  }
  return perm;
}

Permutation sigma(const IntMatrix& m, const std::vector<RatVector>& theta) { return induced_permutation(m, theta); }

Permutation sigma_star(const IntMatrix& m_prime, const std::vector<RatVector>& theta_star) {
  return induced_permutation(m_prime.transpose(), theta_star);
}

Permutation inverse(const Permutation& perm) {
  Permutation inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
  return inv;
}

Permutation power(const Permutation& perm, int j) {
  const Permutation step = j < 0 ? inverse(perm) : perm;
  Permutation out(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out[i] = i;
  for (int n = 0; n < std::abs(j); ++n)
    for (auto& x : out) x = step[x];
  return out;
}

Eigen::MatrixXcd duality_matrix(const IntMatrix& p, const std::vector<RatVector>& theta,
                                const std::vector<RatVector>& theta_star) {
  const std::size_t n = theta.size();
  if (theta_star.size() != n) throw Error(ErrorKind::ShapeMismatch, "transversals differ in size");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const RatMatrix pr = to_rational(p);
  Eigen::MatrixXcd h(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const RatVector p_theta = pr * theta[r];
    for (std::size_t q = 0; q < n; ++q) h(r, q) = scale * unit_phase(dot(p_theta, theta_star[q]));
  }
  return h;
}

CosetSystem CosetSystem::build(const IntMatrix& m, const IntMatrix& p) {
  const AdmissibilityReport report = check_admissible(m, p);
  if (!report.admissible)
    throw Error(ErrorKind::NotAdmissible, "P = " + format_matrix(p) + " is not admissible for M = " + format_matrix(m) +
                                              (report.m_prime_integral ? " (M^-1 Z^d and P^-1 Z^d meet in more than Z^d)"
                                                                       : " (P M P^-1 is not integral)"));
  CosetSystem cs;
  cs.m_ = m;
  cs.p_ = p;
  cs.m_prime_ = to_integer(report.m_prime);
  cs.p_inverse_ = inverse_rational(p);
  cs.theta_ = coset_representatives(p);
  cs.theta_star_ = dual_representatives(p);
  const RatMatrix pr = to_rational(p);
  for (const auto& t : cs.theta_) {
    const RatVector pt = pr * t;
    IntVector v;
    for (const auto& x : pt) v.push_back(x.get_num());
    cs.p_theta_.push_back(std::move(v));
  }
  cs.sigma_ = superframe::sigma(m, cs.theta_);
  cs.sigma_star_ = superframe::sigma_star(cs.m_prime_, cs.theta_star_);
  cs.h_ = duality_matrix(p, cs.theta_, cs.theta_star_);
  cs.theta_index_.emplace(cs.theta_);
  if (cs.sigma_.front() != 0 || cs.sigma_star_.front() != 0)
    throw Error(ErrorKind::NotAPermutation, "induced permutations must fix 0: sigma = " + describe(cs.sigma_) +
                                                ", sigma* = " + describe(cs.sigma_star_));
  return cs;
}

Residue CosetSystem::residue_index(const IntVector& k) const {
  if (k.size() != dim()) throw Error(ErrorKind::ShapeMismatch, "residue_index: k has wrong dimension");
  const RatVector x = p_inverse_ * to_rational(k);
  const auto l = theta_index_->find(x);
  if (!l) throw Error(ErrorKind::NotAPermutation, "P^-1 k has no listed coset");
  const RatVector m = subtract(x, theta_[*l]);
  IntVector mi;
  for (const auto& c : m) mi.push_back(c.get_num());
  return {*l, std::move(mi)};
}

Complex CosetSystem::character(const IntVector& k, std::size_t q) const {
  return unit_phase(dot(to_rational(k), theta_star_.at(q)));
}

double CosetSystem::unitarity_residual() const {
  const Eigen::Index n = h_.rows();
  const Eigen::MatrixXcd e = h_ * h_.adjoint() - Eigen::MatrixXcd::Identity(n, n);
  return e.cwiseAbs().maxCoeff();
}

double CosetSystem::compatibility_residual() const {
  double worst = 0.0;
  const std::size_t n = order();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t q = 0; q < n; ++q)
      worst = std::max(worst, std::abs(h_(sigma_[r], q) - h_(r, sigma_star_[q])));
  return worst;
}

std::string CosetSystem::fingerprint() const {
  std::string text = "M=" + format_matrix(m_) + ";P=" + format_matrix(p_) + ";theta=";
  for (const auto& t : theta_) text += "(" + format_vector(t) + ")";
  text += ";theta*=";
  for (const auto& t : theta_star_) text += "(" + format_vector(t) + ")";
  return fnv1a_hex(text);
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace superframe
