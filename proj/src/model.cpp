// Copyright 2026 The lindsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lindsim/model.hpp"

#include <cmath>
#include <stdexcept>

#include "lindsim/errors.hpp"
#include "lindsim/hermitian_eig.hpp"
#include "lindsim/linalg.hpp"

namespace lindsim {

namespace {

void check_cap(int n_qubits, int cap, const char* what) {
  if (n_qubits > cap) {
    throw CapExceeded(std::string(what) + ": " + std::to_string(n_qubits) +
                      " qubits exceeds the superoperator cap of " +
                      std::to_string(cap));
  }
}

bool all_phases_real(const std::vector<PauliTerm>& terms) {
  for (const auto& t : terms) {
    if (std::abs(std::imag(t.string.phase())) > 1e-12) return false;
  }
  return true;
}

}  // namespace

HamiltonianSpec::HamiltonianSpec(int n_qubits, std::vector<PauliTerm> terms)
    : n_(n_qubits), terms_(std::move(terms)) {
  if (n_qubits < 1) {
    throw std::invalid_argument("HamiltonianSpec: need at least one qubit");
  }
  for (const auto& t : terms_) {
    if (t.coeff <= 0.0) {
      throw std::invalid_argument(
          "HamiltonianSpec: coefficients must be strictly positive "
          "(absorb signs into the Pauli phase)");
    }
    if (t.string.n_qubits() != n_) {
      throw std::invalid_argument("HamiltonianSpec: term qubit count mismatch");
    }
  }
  // Real phases make every term Hermitian. Otherwise verify the realized
  // matrix (dense check, so only feasible at small n).
  if (!terms_.empty() && !all_phases_real(terms_)) {
    if (n_ > 10) {
      throw std::invalid_argument(
          "HamiltonianSpec: cannot verify hermiticity of complex-phase terms "
          "beyond 10 qubits");
    }
    if (!to_matrix().is_hermitian(1e-10)) {
      throw std::invalid_argument("HamiltonianSpec: realized matrix is not "
                                  "Hermitian within 1e-10");
    }
  }
}

HamiltonianSpec HamiltonianSpec::zero(int n_qubits) {
  return HamiltonianSpec(n_qubits, {});
}

ComplexMatrix HamiltonianSpec::to_matrix() const {
  const std::size_t d = std::size_t(1) << n_;
  ComplexMatrix h(d, d);
  for (const auto& t : terms_) {
    ComplexMatrix m = t.string.to_matrix();
    m *= cplx(t.coeff, 0.0);
    h += m;
  }
  return h;
}

double HamiltonianSpec::pauli_weight() const {
  double s = 0.0;
  for (const auto& t : terms_) s += t.coeff;
  return s;
}

JumpSpec::JumpSpec(int n_qubits, std::vector<PauliTerm> terms,
                   std::optional<UnitaryJumpForm> unitary_form)
    : n_(n_qubits), terms_(std::move(terms)),
      unitary_form_(std::move(unitary_form)) {
  for (const auto& t : terms_) {
    if (t.coeff <= 0.0) {
      throw std::invalid_argument("JumpSpec: coefficients must be positive");
    }
    if (t.string.n_qubits() != n_) {
      throw std::invalid_argument("JumpSpec: term qubit count mismatch");
    }
  }
  if (unitary_form_) {
    if (unitary_form_->u.n_qubits() != n_) {
      throw std::invalid_argument("JumpSpec: unitary form qubit mismatch");
    }
    // Single Pauli term against a Pauli payload compares symbolically;
    // anything else needs the dense matrices.
    const auto& uf = *unitary_form_;
    if (terms_.size() == 1 && uf.u.is_pauli() &&
        terms_[0].string.letters() == uf.u.pauli().letters()) {
      const cplx lhs = terms_[0].coeff * terms_[0].string.phase();
      const cplx rhs = uf.alpha * uf.u.pauli().phase();
      if (std::abs(lhs - rhs) > 1e-10) {
        throw std::invalid_argument(
            "JumpSpec: unitary form disagrees with the Pauli terms");
      }
    } else {
      if (n_ > 10) {
        throw std::invalid_argument(
            "JumpSpec: cannot verify a multi-term unitary form beyond 10 "
            "qubits");
      }
      ComplexMatrix lhs = to_matrix();
      ComplexMatrix rhs = uf.u.to_matrix();
      rhs *= uf.alpha;
      lhs -= rhs;
      if (lhs.max_abs() > 1e-10) {
        throw std::invalid_argument(
            "JumpSpec: unitary form disagrees with the Pauli terms");
      }
    }
  }
}

JumpSpec JumpSpec::from_unitary(cplx alpha, PauliString u) {
  const int n = u.n_qubits();
  const double mag = std::abs(alpha);
  if (mag <= 0.0) {
    throw std::invalid_argument("JumpSpec: alpha must be nonzero");
  }
  // L = alpha U = |alpha| * (U with the residual phase folded in).
  const cplx dir = alpha / mag;
  PauliString phased(u.letters(), u.phase() * dir);
  std::vector<PauliTerm> terms{{mag, phased}};
  return JumpSpec(n, std::move(terms), UnitaryJumpForm{alpha, UnitaryOp(u)});
}

JumpSpec JumpSpec::from_unitary(int n_qubits, cplx alpha, ComplexMatrix u) {
  UnitaryOp op(n_qubits, std::move(u));
  ComplexMatrix scaled = op.to_matrix();
  scaled *= alpha;
  std::vector<PauliTerm> terms = pauli_decompose(n_qubits, scaled);
  return JumpSpec(n_qubits, std::move(terms),
                  UnitaryJumpForm{alpha, std::move(op)});
}

std::vector<PauliTerm> pauli_decompose(int n_qubits, const ComplexMatrix& m,
                                       double drop_tol) {
  const std::size_t d = std::size_t(1) << n_qubits;
  if (m.rows() != d || m.cols() != d) {
    throw std::invalid_argument("pauli_decompose: matrix is not 2^n x 2^n");
  }
  const std::size_t n_paulis = d * d;
  std::vector<PauliTerm> terms;
  for (std::size_t code = 0; code < n_paulis; ++code) {
    std::vector<Pauli> letters(n_qubits);
    std::size_t c = code;
    for (int q = n_qubits - 1; q >= 0; --q) {
      letters[q] = static_cast<Pauli>(c & 3u);
      c >>= 2;
    }
    PauliString p(std::move(letters));
    // tr(P^dag M) / d via the basis action of P.
    const std::uint64_t x = p.x_mask();
    cplx overlap(0.0, 0.0);
    for (std::uint64_t a = 0; a < d; ++a) {
      overlap += std::conj(p.basis_coeff(a)) * m(a ^ x, a);
    }
    overlap /= static_cast<double>(d);
    const double mag = std::abs(overlap);
    if (mag > drop_tol) {
      terms.push_back({mag, PauliString(p.letters(), overlap / mag)});
    }
  }
  return terms;
}

ComplexMatrix JumpSpec::to_matrix() const {
  const std::size_t d = std::size_t(1) << n_;
  ComplexMatrix l(d, d);
  for (const auto& t : terms_) {
    ComplexMatrix m = t.string.to_matrix();
    m *= cplx(t.coeff, 0.0);
    l += m;
  }
  return l;
}

double JumpSpec::pauli_weight() const {
  double s = 0.0;
  for (const auto& t : terms_) s += t.coeff;
  return s;
}

LindbladSpec::LindbladSpec(HamiltonianSpec hamiltonian,
                           std::vector<JumpSpec> jumps)
    : hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)) {
  for (const auto& j : jumps_) {
    if (j.n_qubits() != hamiltonian_.n_qubits()) {
      throw std::invalid_argument("LindbladSpec: jump qubit count mismatch");
    }
  }
}

std::optional<std::vector<UnitaryJumpForm>> LindbladSpec::unitary_jumps()
    const {
  std::vector<UnitaryJumpForm> out;
  out.reserve(jumps_.size());
  for (const auto& j : jumps_) {
    if (!j.unitary_form()) return std::nullopt;
    out.push_back(*j.unitary_form());
  }
  return out;
}

Superoperator::Superoperator(int n_qubits, ComplexMatrix m)
    : n_(n_qubits), m_(std::move(m)) {
  const std::size_t dd = (std::size_t(1) << n_qubits) *
                         (std::size_t(1) << n_qubits);
  if (m_.rows() != dd || m_.cols() != dd) {
    throw std::invalid_argument("Superoperator: matrix is not 4^n x 4^n");
  }
}

Superoperator Superoperator::identity(int n_qubits) {
  const std::size_t d = std::size_t(1) << n_qubits;
  return Superoperator(n_qubits, ComplexMatrix::identity(d * d));
}

Superoperator Superoperator::zero(int n_qubits) {
  const std::size_t d = std::size_t(1) << n_qubits;
  return Superoperator(n_qubits, ComplexMatrix(d * d, d * d));
}

Superoperator Superoperator::unitary_conjugation(int n_qubits,
                                                 const ComplexMatrix& u) {
  return Superoperator(n_qubits, kron(u.conjugate(), u));
}

Superoperator Superoperator::pauli_conjugation(const PauliString& p) {
  const int n = p.n_qubits();
  const std::size_t d = std::size_t(1) << n;
  const std::uint64_t x = p.x_mask();
  ComplexMatrix m(d * d, d * d);
  for (std::uint64_t a = 0; a < d; ++a) {
    const cplx ca = p.basis_coeff(a ^ x);
    for (std::uint64_t b = 0; b < d; ++b) {
      const cplx coeff = ca * std::conj(p.basis_coeff(b ^ x));
      // out(a,b) = coeff * rho(a^x, b^x); vec index is col*d + row.
      m(b * d + a, (b ^ x) * d + (a ^ x)) = coeff;
    }
  }
  return Superoperator(n, std::move(m));
}

Superoperator Superoperator::conjugation(const UnitaryOp& u) {
  if (u.is_pauli()) return pauli_conjugation(u.pauli());
  return unitary_conjugation(u.n_qubits(), u.to_matrix());
}

Superoperator Superoperator::state_preparation(const DensityMatrix& rho_f) {
  const std::size_t d = rho_f.dim();
  const auto target = vec(rho_f.matrix());
  ComplexMatrix m(d * d, d * d);
  for (std::size_t row = 0; row < d * d; ++row) {
    for (std::size_t i = 0; i < d; ++i) {
      m(row, i * d + i) = target[row];  // tr(rho) = sum of diagonal vec slots
    }
  }
  return Superoperator(rho_f.n_qubits(), std::move(m));
}

DensityMatrix Superoperator::apply(const DensityMatrix& rho, double tol) const {
  return DensityMatrix(n_, apply_raw(rho.matrix()), tol);
}

ComplexMatrix Superoperator::apply_raw(const ComplexMatrix& rho) const {
  const std::size_t d = std::size_t(1) << n_;
  if (rho.rows() != d || rho.cols() != d) {
    throw std::invalid_argument("Superoperator::apply: dimension mismatch");
  }
  return unvec(m_.apply(vec(rho)), d);
}

Superoperator Superoperator::operator*(const Superoperator& other) const {
  if (n_ != other.n_) {
    throw std::invalid_argument("Superoperator product: qubit count mismatch");
  }
  return Superoperator(n_, m_ * other.m_);
}

Superoperator& Superoperator::operator+=(const Superoperator& other) {
  m_ += other.m_;
  return *this;
}

Superoperator& Superoperator::operator-=(const Superoperator& other) {
  m_ -= other.m_;
  return *this;
}

Superoperator& Superoperator::operator*=(cplx scale) {
  m_ *= scale;
  return *this;
}

Superoperator Superoperator::pow(long exponent) const {
  if (exponent < 0) {
    throw std::invalid_argument("Superoperator::pow: negative exponent");
  }
  Superoperator result = identity(n_);
  for (long i = 0; i < exponent; ++i) result = result * (*this);
  return result;
}

ComplexMatrix Superoperator::choi() const {
  const std::size_t d = std::size_t(1) << n_;
  ComplexMatrix c(d * d, d * d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t b = 0; b < d; ++b) {
        for (std::size_t j = 0; j < d; ++j) {
          c(a * d + i, b * d + j) = m_(b * d + a, j * d + i);
        }
      }
    }
  }
  return c;
}

bool Superoperator::is_cptp(double psd_tol, double tp_tol) const {
  ComplexMatrix c = choi();
  if (!c.is_hermitian(psd_tol)) return false;
  const auto eigs = hermitian_eigenvalues(c);
  if (!eigs.empty() && eigs.front() < -psd_tol) return false;
  // Trace preservation: sum_a S[(a*d+a), col] equals vec(I)^T on every column.
  const std::size_t d = std::size_t(1) << n_;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      cplx s(0.0, 0.0);
      for (std::size_t a = 0; a < d; ++a) s += m_(a * d + a, j * d + i);
      const cplx expected = (i == j) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
      if (std::abs(s - expected) > tp_tol) return false;
    }
  }
  return true;
}

Superoperator operator-(Superoperator a, const Superoperator& b) {
  a -= b;
  return a;
}

Superoperator operator+(Superoperator a, const Superoperator& b) {
  a += b;
  return a;
}

std::vector<cplx> vec(const ComplexMatrix& rho) {
  const std::size_t d = rho.rows();
  std::vector<cplx> v(d * rho.cols());
  for (std::size_t j = 0; j < rho.cols(); ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      v[j * d + i] = rho(i, j);
    }
  }
  return v;
}

ComplexMatrix unvec(const std::vector<cplx>& v, std::size_t d) {
  if (v.size() != d * d) throw std::invalid_argument("unvec: size mismatch");
  ComplexMatrix m(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      m(i, j) = v[j * d + i];
    }
  }
  return m;
}

Superoperator hamiltonian_liouvillian(const HamiltonianSpec& h, int cap) {
  check_cap(h.n_qubits(), cap, "hamiltonian_liouvillian");
  const std::size_t d = std::size_t(1) << h.n_qubits();
  const ComplexMatrix hm = h.to_matrix();
  const ComplexMatrix id = ComplexMatrix::identity(d);
  ComplexMatrix m = kron(id, hm) - kron(hm.transpose(), id);
  m *= cplx(0.0, -1.0);
  return Superoperator(h.n_qubits(), std::move(m));
}

Superoperator dissipator_liouvillian(int n_qubits,
                                     const std::vector<JumpSpec>& jumps,
                                     int cap) {
  check_cap(n_qubits, cap, "dissipator_liouvillian");
  const std::size_t d = std::size_t(1) << n_qubits;
  const ComplexMatrix id = ComplexMatrix::identity(d);
  ComplexMatrix m(d * d, d * d);
  const ComplexMatrix super_id = ComplexMatrix::identity(d * d);
  for (const auto& j : jumps) {
    if (j.terms().size() == 1) {
      // L = beta P: conj(L)(x)L = beta^2 * (P conjugation), L^dag L = beta^2 I.
      const double b2 = j.terms()[0].coeff * j.terms()[0].coeff;
      ComplexMatrix term =
          Superoperator::pauli_conjugation(j.terms()[0].string).matrix() -
          super_id;
      term *= cplx(b2, 0.0);
      m += term;
      continue;
    }
    const ComplexMatrix l = j.to_matrix();
    const ComplexMatrix ldl = l.adjoint() * l;
    m += kron(l.conjugate(), l);
    ComplexMatrix anti = kron(id, ldl) + kron(ldl.transpose(), id);
    anti *= cplx(0.5, 0.0);
    m -= anti;
  }
  return Superoperator(n_qubits, std::move(m));
}

Superoperator build_liouvillian(const LindbladSpec& spec, int cap) {
  Superoperator l = hamiltonian_liouvillian(spec.hamiltonian(), cap);
  l += dissipator_liouvillian(spec.n_qubits(), spec.jumps(), cap);
  return l;
}

DensityMatrix exact_propagate(const LindbladSpec& spec, const DensityMatrix& rho,
                              double T, int cap) {
  if (T < 0.0) {
    throw std::invalid_argument("exact_propagate: negative time");
  }
  if (rho.n_qubits() != spec.n_qubits()) {
    throw std::invalid_argument("exact_propagate: state/spec qubit mismatch");
  }
  const Superoperator l = build_liouvillian(spec, cap);
  const ComplexMatrix propagator = matrix_exp(l.matrix(), cplx(T, 0.0));
  const std::size_t d = rho.dim();
  return DensityMatrix(rho.n_qubits(),
                       unvec(propagator.apply(vec(rho.matrix())), d), 1e-8);
}

double pauli_norm_dissipator(const std::vector<JumpSpec>& jumps) {
  double s = 0.0;
  for (const auto& j : jumps) {
    const double w = j.pauli_weight();
    s += w * w;
  }
  return s;
}

double pauli_norm(const LindbladSpec& spec) {
  return spec.hamiltonian().pauli_weight() +
         pauli_norm_dissipator(spec.jumps());
}

DiamondBounds diamond_bounds(const Superoperator& delta, double herm_tol) {
  ComplexMatrix c = delta.choi();
  ComplexMatrix asym = c - c.adjoint();
  if (asym.max_abs() > herm_tol) {
    throw std::invalid_argument(
        "diamond_bounds: map is not Hermiticity-preserving (Choi matrix has "
        "non-Hermitian part)");
  }
  ComplexMatrix herm = c + c.adjoint();
  herm *= cplx(0.5, 0.0);
  const double tn = trace_norm_hermitian(herm);
  const double d = static_cast<double>(std::size_t(1) << delta.n_qubits());
  return DiamondBounds{tn / d, tn};
}

}  // namespace lindsim
