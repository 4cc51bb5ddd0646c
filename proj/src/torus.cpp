#include "nullray/torus.hpp"

namespace nullray {

ClosedNullGeodesic::ClosedNullGeodesic(NullLatticeDirection direction, Eigen::VectorXd offset)
    : direction_(std::move(direction)), offset_(std::move(offset)) {
  if (offset_.size() != direction_.signature().total())
    throw std::invalid_argument("geodesic offset has wrong dimension");
  if ((offset_.array() < 0.0).any() || (offset_.array() >= 1.0).any())
    throw std::invalid_argument("geodesic offset entries must lie in [0, 1)");
}

ComplexTrigPolynomial translate(const ComplexTrigPolynomial& f, const Eigen::VectorXd& shift) {
  if (shift.size() != f.signature().total())
    throw std::invalid_argument("translate: shift has wrong dimension");
  ComplexTrigPolynomial out(f.signature());
  for (const auto& [k, c] : f)
    out.set(LatticeFrequency(f.signature(), k),
            c * std::polar(1.0, kTwoPi * k.cast<double>().dot(shift)));
  return out;
}

ExactTrigPolynomial kernel_witness(const LatticeFrequency& freq, const MembershipOptions& options) {
  const Signature sig = freq.signature();
  if (sig.n1 >= 2 && sig.n2 >= 2)
    throw std::invalid_argument(
        "kernel_witness: the transform is injective when n1, n2 >= 2; no kernel exists");
  const auto m = k_membership(freq, options);
  if (m.decision == Membership::InK)
    throw std::invalid_argument("kernel_witness: frequency lies in K (witness " +
                                format_int_vector(m.witness->coords()) + ")");
  if (m.decision == Membership::Unknown)
    throw std::invalid_argument("kernel_witness: membership of the frequency is undecided");
  return ExactTrigPolynomial::monomial(freq, ExactComplex(1));
}

} // namespace nullray
