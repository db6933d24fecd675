#include "qgf/pauli.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "qgf/kernels.hpp"
#include "qgf/statevector.hpp"

namespace qgf {

namespace {

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    default: return 'Z';
  }
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default:
      throw ParameterError(std::string("invalid Pauli symbol '") + c + "'");
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

PauliString::PauliString(int n_qubits) {
  if (n_qubits < 1) throw ParameterError("PauliString needs n >= 1 qubits");
  if (n_qubits > 64) throw ResourceError("PauliString capped at 64 qubits");
  ops_.assign(n_qubits, Pauli::I);
}

PauliString PauliString::parse(std::string_view text) {
  PauliString s(static_cast<int>(text.size()));
  for (std::size_t q = 0; q < text.size(); ++q) s.ops_[q] = pauli_from_char(text[q]);
  return s;
}

bool PauliString::is_identity() const {
  for (Pauli p : ops_)
    if (p != Pauli::I) return false;
  return true;
}

std::string PauliString::str() const {
  std::string out(ops_.size(), 'I');
  for (std::size_t q = 0; q < ops_.size(); ++q) out[q] = pauli_char(ops_[q]);
  return out;
}

PauliString::Masks PauliString::masks() const {
  Masks m;
  for (std::size_t q = 0; q < ops_.size(); ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    switch (ops_[q]) {
      case Pauli::X: m.x |= bit; break;
      case Pauli::Y: m.x |= bit; m.z |= bit; ++m.y_count; break;
      case Pauli::Z: m.z |= bit; break;
      case Pauli::I: break;
    }
  }
  return m;
}

PauliSum::PauliSum(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1) throw ParameterError("PauliSum needs n >= 1 qubits");
}

void PauliSum::add(double coeff, const PauliString& s) {
  if (s.n_qubits() != n_qubits_)
    throw DimensionError("PauliString register size mismatch");
  if (!std::isfinite(coeff)) throw ParameterError("non-finite coefficient");
  if (coeff == 0.0) return;
  if (s.is_identity()) {
    identity_offset_ += coeff;
    return;
  }
  const std::string key = s.str();
  if (auto it = index_.find(key); it != index_.end()) {
    terms_[it->second].coeff += coeff;
    if (terms_[it->second].coeff == 0.0) {
      const std::size_t gone = it->second;
      terms_.erase(terms_.begin() + static_cast<std::ptrdiff_t>(gone));
      index_.erase(it);
      for (auto& [k, idx] : index_)
        if (idx > gone) --idx;
    }
    return;
  }
  index_.emplace(key, terms_.size());
  terms_.push_back({coeff, s});
}

void PauliSum::to_text(std::ostream& out) const {
  out << "n=" << n_qubits_ << " offset=" << format_double(identity_offset_)
      << '\n';
  for (const auto& t : terms_)
    out << format_double(t.coeff) << '\t' << t.string.str() << '\n';
}

PauliSum PauliSum::from_text(std::istream& in) {
  std::string header;
  if (!std::getline(in, header))
    throw ParameterError("empty operator text");
  int n = 0;
  double offset = 0.0;
  if (std::sscanf(header.c_str(), "n=%d offset=%lf", &n, &offset) != 2)
    throw ParameterError("bad operator header: " + header);
  PauliSum h(n);
  h.identity_offset_ = offset;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParameterError("bad operator term line: " + line);
    double c = 0.0;
    try {
      c = std::stod(line.substr(0, tab));
    } catch (const std::exception&) {
      throw ParameterError("bad coefficient in line: " + line);
    }
    const std::string body = line.substr(tab + 1);
    if (static_cast<int>(body.size()) != n)
      throw ParameterError("term length != n in line: " + line);
    h.add(c, PauliString::parse(body));
  }
  return h;
}

int Spectrum::n_qubits() const {
  int n = 0;
  while ((Eigen::Index{1} << n) < eigenvalues.size()) ++n;
  return n;
}

PauliSum build_tfim(int n, double J, double g, bool periodic) {
  if (n < 1) throw ParameterError("build_tfim: n must be >= 1");
  if (periodic && n < 2)
    throw ParameterError("build_tfim: periodic chain needs n >= 2");
  PauliSum h(n);
  const int bonds = periodic ? n : n - 1;
  for (int i = 0; i < bonds; ++i) {
    PauliString s(n);
    s.set(i, Pauli::Z);
    s.set((i + 1) % n, Pauli::Z);
    h.add(-J, s);
  }
  for (int q = 0; q < n; ++q) {
    PauliString s(n);
    s.set(q, Pauli::X);
    h.add(g, s);
  }
  return h;
}

PauliSum shift_spectrum(const PauliSum& h, double e_shift) {
  PauliSum out = h;
  out.add_identity(e_shift);
  return out;
}

Eigen::MatrixXcd dense_matrix(const PauliSum& h) {
  const auto dim = static_cast<Eigen::Index>(h.dim());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  m.diagonal().array() += h.identity_offset();
  for (const auto& term : h.terms()) {
    const auto mt = kernels::mask_term(term.coeff, term.string);
    for (Eigen::Index col = 0; col < dim; ++col) {
      const auto b = static_cast<std::uint64_t>(col);
      const int parity = std::popcount(b & mt.z) & 1;
      const cplx phase = parity ? -mt.y_phase : mt.y_phase;
      m(static_cast<Eigen::Index>(b ^ mt.x), col) += mt.coeff * phase;
    }
  }
  return m;
}

Spectrum diagonalize(const PauliSum& h) {
  if (h.n_qubits() > 12)
    throw ResourceError("diagonalize: register above the 12-qubit dense budget");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense_matrix(h));
  if (solver.info() != Eigen::Success)
    throw Error("diagonalize: eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

StateVector apply(const PauliSum& h, const StateVector& psi) {
  if (h.n_qubits() != psi.n_qubits())
    throw DimensionError("apply: operator and state sizes differ");
  std::vector<cplx> out(psi.dim());
  const auto terms = kernels::mask_terms(h);
  kernels::apply_pauli_sum(terms, h.identity_offset(), psi.amplitudes(), out);
  return StateVector::from_amplitudes(psi.n_qubits(), std::move(out));
}

}  // namespace qgf
