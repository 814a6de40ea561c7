// Copyright 2026 The lcuresp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lcuresp/sim.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace lcuresp {

namespace {

using cd = std::complex<double>;

constexpr std::array<const char *, kNoiseClasses> kClassNames{"single", "cz", "cs", "csdg", "czphi", "swap", "itoffoli", "prep"};

int class_arity(NoiseClass c) {
    switch (c) {
    case NoiseClass::Single:
        return 1;
    case NoiseClass::IToffoli:
        return 3;
    default:
        return 2;
    }
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string &key, const std::string &value) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(value, &used);
    } catch (const std::exception &) {
        throw NoiseConfigError("noise config: '" + key + "' expects a number, got '" + value + "'");
    }
    if (used != value.size() || !std::isfinite(x)) throw NoiseConfigError("noise config: '" + key + "' expects a number, got '" + value + "'");
    return x;
}

bool parse_flag(const std::string &key, const std::string &value) {
    if (value == "on" || value == "true" || value == "1") return true;
    if (value == "off" || value == "false" || value == "0") return false;
    throw NoiseConfigError("noise config: '" + key + "' expects on/off, got '" + value + "'");
}

Eigen::MatrixXcd coherent_unitary(const GateNoise &g, int arity) {
    const auto dim = Eigen::Index{1} << arity;
    if (!g.coherent_axis || g.coherent_angle == 0.0) return Eigen::MatrixXcd::Identity(dim, dim);
    return pauli_rotation(*g.coherent_axis, g.coherent_angle);
}

// Spectator pair of an iToffoli on a chain: the outer qubit past its upper
// edge, or below its lower edge when the gate sits at the end.
std::optional<std::pair<int, int>> spectator_pair(const Gate &g, int n) {
    const auto [lo, hi] = std::minmax_element(g.qubits.begin(), g.qubits.end());
    if (*hi + 1 < n) return std::pair{*hi, *hi + 1};
    if (*lo - 1 >= 0) return std::pair{*lo - 1, *lo};
    return std::nullopt;
}

void apply_gate_noise(DensityMatrix &rho, int n, const Gate &g, const NoiseModel &noise) {
    if (g.is_virtual_z()) return;
    const GateNoise &gn = noise.at(noise_class(g));
    if (gn.coherent_axis && gn.coherent_angle != 0.0) apply_unitary(rho, n, pauli_rotation(*gn.coherent_axis, gn.coherent_angle), g.qubits);
    if (gn.depolarizing > 0.0) apply_depolarizing(rho, n, gn.depolarizing, g.qubits);
    if (g.kind == GateKind::IToffoli && noise.spectator_phi != 0.0) {
        if (const auto pair = spectator_pair(g, n)) {
            const std::vector<int> qs{pair->first, pair->second};
            apply_unitary(rho, n, spectator_unitary(noise.spectator_phi), qs);
            if (noise.correction) apply_unitary(rho, n, spectator_correction(noise.spectator_phi), qs);
        }
    }
}

Eigen::MatrixXcd gate_unitary(const Gate &g) { return g.kind == GateKind::DensePrep ? Eigen::MatrixXcd(g.dense) : g.matrix(); }

void check_dims(const Circuit &c, Eigen::Index rows, Eigen::Index cols) {
    const Eigen::Index dim = Eigen::Index{1} << c.num_qubits();
    if (rows != dim || cols != dim) {
        throw SimError("dimension mismatch: circuit on " + std::to_string(c.num_qubits()) + " qubits, input " + std::to_string(rows) + "x" +
                       std::to_string(cols));
    }
}

void apply_left(Eigen::MatrixXcd &m, int n, const Eigen::MatrixXcd &k, const std::vector<int> &qubits) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        Eigen::VectorXcd v = m.col(j);
        apply_matrix(v, n, k, qubits);
        m.col(j) = v;
    }
}

}  // namespace

Channel Channel::identity(int n) { return {n, {Eigen::MatrixXcd::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n)}}; }

Channel Channel::unitary(const Eigen::MatrixXcd &u) {
    const int n = static_cast<int>(std::lround(std::log2(static_cast<double>(u.rows()))));
    if (u.rows() != u.cols() || (Eigen::Index{1} << n) != u.rows()) throw SimError("Channel::unitary: matrix is not 2^n square");
    return {n, {u}};
}

Channel Channel::depolarizing(int n, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw NoiseConfigError("depolarizing probability outside [0,1]");
    const double d2 = std::pow(4.0, n);
    Channel ch{n, {}};
    for (const auto &ps : all_pauli_strings(static_cast<std::size_t>(n))) {
        const double w = ps.is_identity_letters() ? 1.0 - p + p / d2 : p / d2;
        if (w > 0.0) ch.kraus.push_back(std::sqrt(w) * ps.matrix());
    }
    return ch;
}

double Channel::completeness_error() const {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &k : kraus) sum += k.adjoint() * k;
    return (sum - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

Channel Channel::compose(const Channel &first, const Channel &second) {
    if (first.num_qubits != second.num_qubits) throw SimError("Channel::compose: qubit count mismatch");
    Channel out{first.num_qubits, {}};
    for (const auto &b : second.kraus) {
        for (const auto &a : first.kraus) out.kraus.push_back(b * a);
    }
    return out;
}

DensityMatrix Channel::apply(const DensityMatrix &rho) const {
    DensityMatrix out = DensityMatrix::Zero(rho.rows(), rho.cols());
    for (const auto &k : kraus) out += k * rho * k.adjoint();
    return out;
}

Eigen::MatrixXd channel_ptm(const Channel &ch) {
    if (ch.num_qubits > 3) throw SimError("channel_ptm supports at most 3 qubits");
    const auto basis = all_pauli_strings(static_cast<std::size_t>(ch.num_qubits));
    std::vector<Eigen::MatrixXcd> mats;
    for (const auto &p : basis) mats.push_back(p.matrix());
    const auto size = static_cast<Eigen::Index>(basis.size());
    const double dim = std::pow(2.0, ch.num_qubits);
    Eigen::MatrixXd ptm(size, size);
    for (Eigen::Index j = 0; j < size; ++j) {
        const DensityMatrix image = ch.apply(mats[static_cast<std::size_t>(j)]);
        for (Eigen::Index i = 0; i < size; ++i) ptm(i, j) = (mats[static_cast<std::size_t>(i)] * image).trace().real() / dim;
    }
    return ptm;
}

std::string to_string(NoiseClass c) { return kClassNames[static_cast<std::size_t>(c)]; }

NoiseClass noise_class(const Gate &g) {
    switch (g.kind) {
    case GateKind::Single:
        return NoiseClass::Single;
    case GateKind::CZ:
        return NoiseClass::CZ;
    case GateKind::CS:
        return NoiseClass::CS;
    case GateKind::CSdg:
        return NoiseClass::CSdg;
    case GateKind::CZPhi:
        return NoiseClass::CZPhi;
    case GateKind::Swap:
        return NoiseClass::Swap;
    case GateKind::IToffoli:
        return NoiseClass::IToffoli;
    case GateKind::DensePrep:
        return NoiseClass::Prep;
    }
    return NoiseClass::Single;
}

bool NoiseModel::empty() const {
    return spectator_phi == 0.0 && std::all_of(gates.begin(), gates.end(), [](const GateNoise &g) { return g.empty(); });
}

void NoiseModel::validate() const {
    for (std::size_t k = 0; k < kNoiseClasses; ++k) {
        const auto &g = gates[k];
        const auto c = static_cast<NoiseClass>(k);
        if (!(g.depolarizing >= 0.0 && g.depolarizing <= 1.0)) {
            throw NoiseConfigError(to_string(c) + ": depolarizing probability " + std::to_string(g.depolarizing) + " outside [0,1]");
        }
        if (!std::isfinite(g.coherent_angle)) throw NoiseConfigError(to_string(c) + ": coherent angle is not finite");
        if (g.coherent_axis) {
            if (static_cast<int>(g.coherent_axis->size()) != class_arity(c)) {
                throw NoiseConfigError(to_string(c) + ": coherent axis " + g.coherent_axis->to_string() + " does not match gate arity " +
                                       std::to_string(class_arity(c)));
            }
            if (g.coherent_axis->phase() != Phase::one()) throw NoiseConfigError(to_string(c) + ": coherent axis must carry no phase");
        }
    }
    if (!std::isfinite(spectator_phi)) throw NoiseConfigError("spectator_phi is not finite");
}

NoiseModel NoiseModel::none() { return {}; }

NoiseModel NoiseModel::paper() {
    NoiseModel m;
    m.spectator_phi = 0.844;
    m.correction = true;
    // Share of each multi-qubit gate's infidelity carried by a coherent
    // rotation; depolarizing noise supplies the rest.
    constexpr double kCoherentShare = 0.5;
    auto calibrate = [&](NoiseClass c, const char *axis, double fidelity) {
        auto &g = m.at(c);
        g.coherent_axis = PauliString::parse(axis);
        g.coherent_angle = 2.0 * std::asin(std::sqrt(kCoherentShare * (1.0 - fidelity)));
        g.depolarizing = depolarizing_from_fidelity(fidelity, coherent_unitary(g, static_cast<int>(std::string_view(axis).size())));
    };
    m.at(NoiseClass::Single).depolarizing = depolarizing_from_fidelity(0.995, Eigen::MatrixXcd::Identity(2, 2));
    for (auto c : {NoiseClass::CZ, NoiseClass::CS, NoiseClass::CSdg, NoiseClass::CZPhi, NoiseClass::Swap}) calibrate(c, "ZZ", 0.982);
    calibrate(NoiseClass::IToffoli, "ZZI", 0.961);
    // The prep gate costs three two-qubit gates.
    m.at(NoiseClass::Prep).depolarizing = depolarizing_from_fidelity(std::pow(0.982, 3), Eigen::MatrixXcd::Identity(4, 4));
    return m;
}

NoiseModel NoiseModel::depolarizing_only() {
    NoiseModel m = paper();
    for (auto &g : m.gates) {
        g.coherent_axis.reset();
        g.coherent_angle = 0.0;
    }
    m.spectator_phi = 0.0;
    m.correction = false;
    return m;
}

NoiseModel NoiseModel::preset(std::string_view name) {
    if (name == "none") return none();
    if (name == "paper") return paper();
    if (name == "depolarizing") return depolarizing_only();
    throw NoiseConfigError("unknown noise preset '" + std::string(name) + "' (expected none, paper or depolarizing)");
}

NoiseModel NoiseModel::parse(std::string_view text) {
    NoiseModel m;
    std::map<std::size_t, double> fidelities;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw NoiseConfigError("noise config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(std::string_view(line).substr(0, eq)), value = trim(std::string_view(line).substr(eq + 1));
        if (key == "preset") {
            m = preset(value);
            fidelities.clear();
            continue;
        }
        if (key == "spectator_phi") {
            m.spectator_phi = parse_number(key, value);
            continue;
        }
        if (key == "correction") {
            m.correction = parse_flag(key, value);
            continue;
        }
        const auto dot = key.find('.');
        const std::string cls = key.substr(0, dot), field = dot == std::string::npos ? "" : key.substr(dot + 1);
        const auto it = std::find(kClassNames.begin(), kClassNames.end(), cls);
        if (it == kClassNames.end() || field.empty()) {
            throw NoiseConfigError("noise config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        const auto idx = static_cast<std::size_t>(it - kClassNames.begin());
        auto &g = m.gates[idx];
        if (field == "fidelity") {
            fidelities[idx] = parse_number(key, value);
        } else if (field == "depolarizing") {
            g.depolarizing = parse_number(key, value);
            fidelities.erase(idx);
        } else if (field == "coherent_axis") {
            try {
                g.coherent_axis = PauliString::parse(value);
            } catch (const std::exception &e) {
                throw NoiseConfigError("noise config: '" + key + "': " + e.what());
            }
        } else if (field == "coherent_angle") {
            g.coherent_angle = parse_number(key, value);
        } else {
            throw NoiseConfigError("noise config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    m.validate();
    for (const auto &[idx, f] : fidelities) {
        if (!(f > 0.0 && f <= 1.0)) throw NoiseConfigError(std::string(kClassNames[idx]) + ".fidelity outside (0,1]");
        auto &g = m.gates[idx];
        g.depolarizing = depolarizing_from_fidelity(f, coherent_unitary(g, class_arity(static_cast<NoiseClass>(idx))));
    }
    m.validate();
    return m;
}

NoiseModel NoiseModel::load(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw NoiseConfigError("cannot open noise config " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return parse(s.str());
}

std::string NoiseModel::to_text() const {
    std::ostringstream s;
    s << std::setprecision(17);
    for (std::size_t k = 0; k < kNoiseClasses; ++k) {
        const auto &g = gates[k];
        s << kClassNames[k] << ".depolarizing = " << g.depolarizing << "\n";
        if (g.coherent_axis) {
            s << kClassNames[k] << ".coherent_axis = " << g.coherent_axis->to_string() << "\n";
            s << kClassNames[k] << ".coherent_angle = " << g.coherent_angle << "\n";
        }
    }
    s << "spectator_phi = " << spectator_phi << "\n";
    s << "correction = " << (correction ? "on" : "off") << "\n";
    return s.str();
}

double depolarizing_from_fidelity(double fidelity, const Eigen::MatrixXcd &coherent) {
    const double d = static_cast<double>(coherent.rows());
    const double overlap = std::norm(coherent.trace() / d);
    const double p = (overlap - fidelity) / (overlap - 1.0 / (d * d));
    if (p > 1.0) throw NoiseConfigError("fidelity " + std::to_string(fidelity) + " is below the fully depolarized value");
    return std::max(0.0, p);
}

Eigen::MatrixXcd pauli_rotation(const PauliString &axis, double angle) {
    const Eigen::MatrixXcd p = axis.matrix();
    const auto dim = p.rows();
    return std::cos(angle / 2) * Eigen::MatrixXcd::Identity(dim, dim) - cd(0, std::sin(angle / 2)) * p;
}

Eigen::Matrix4cd spectator_unitary(double phi) {
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
    for (int k = 0; k < 4; ++k) {
        const double zz = (k == 0 || k == 3) ? 1.0 : -1.0;
        u(k, k) = std::polar(1.0, -phi / 2 * zz);
    }
    return u;
}

Eigen::Matrix4cd spectator_correction(double phi) {
    Eigen::Matrix4cd czphi = Eigen::Matrix4cd::Identity();
    czphi(3, 3) = std::polar(1.0, 2 * phi);
    Eigen::Matrix2cd rz = Eigen::Matrix2cd::Identity();
    rz(1, 1) = std::polar(1.0, -phi);
    Eigen::Matrix4cd virt;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) virt.block<2, 2>(2 * i, 2 * j) = rz(i, j) * rz;
    }
    // Global phase e^{i phi/2} so the product with the spectator is exactly I.
    return std::polar(1.0, phi / 2) * virt * czphi;
}

StateVector basis_state(int num_qubits, std::uint64_t index) {
    StateVector v = StateVector::Zero(Eigen::Index{1} << num_qubits);
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return v;
}

DensityMatrix projector(const StateVector &psi) { return psi * psi.adjoint(); }

StateVector run_statevector(const Circuit &c, const StateVector &input) {
    check_dims(c, input.size(), input.size());
    StateVector v = input;
    for (const auto &m : c.moments()) {
        for (const auto &g : m.gates) apply_matrix(v, c.num_qubits(), gate_unitary(g), g.qubits);
    }
    return v;
}

DensityMatrix run_density(const Circuit &c, const NoiseModel &noise, const DensityMatrix &input) {
    check_dims(c, input.rows(), input.cols());
    noise.validate();
    const int n = c.num_qubits();
    DensityMatrix rho = input;
    const bool noisy = !noise.empty();
    for (const auto &m : c.moments()) {
        for (const auto &g : m.gates) {
            apply_unitary(rho, n, gate_unitary(g), g.qubits);
            if (noisy) apply_gate_noise(rho, n, g, noise);
        }
    }
    return (0.5 * (rho + rho.adjoint())).eval();
}

void apply_unitary(DensityMatrix &rho, int num_qubits, const Eigen::MatrixXcd &k, const std::vector<int> &qubits) {
    apply_left(rho, num_qubits, k, qubits);
    rho.adjointInPlace();
    apply_left(rho, num_qubits, k, qubits);
    rho.adjointInPlace();
}

void apply_depolarizing(DensityMatrix &rho, int num_qubits, double p, const std::vector<int> &qubits) {
    if (p == 0.0) return;
    std::size_t mask = 0;
    for (int q : qubits) mask |= std::size_t{1} << (num_qubits - 1 - q);
    const double d = std::pow(2.0, static_cast<double>(qubits.size()));
    const auto dim = static_cast<std::size_t>(rho.rows());
    // Offsets of every assignment of the operand bits.
    std::vector<std::size_t> subs{0};
    for (std::size_t bit = 1; bit < dim; bit <<= 1) {
        if (!(mask & bit)) continue;
        const auto size = subs.size();
        for (std::size_t k = 0; k < size; ++k) subs.push_back(subs[k] | bit);
    }
    DensityMatrix mixed = DensityMatrix::Zero(rho.rows(), rho.cols());
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & mask) continue;
        for (std::size_t j = 0; j < dim; ++j) {
            if (j & mask) continue;
            cd tr = 0.0;
            for (auto s : subs) tr += rho(static_cast<Eigen::Index>(i | s), static_cast<Eigen::Index>(j | s));
            for (auto s : subs) mixed(static_cast<Eigen::Index>(i | s), static_cast<Eigen::Index>(j | s)) = tr / d;
        }
    }
    rho = (1.0 - p) * rho + p * mixed;
}

DensityMatrix partial_trace(const DensityMatrix &rho, int num_qubits, const std::vector<int> &keep) {
    const int k = static_cast<int>(keep.size());
    const Eigen::Index out_dim = Eigen::Index{1} << k;
    DensityMatrix out = DensityMatrix::Zero(out_dim, out_dim);
    const auto dim = static_cast<std::size_t>(rho.rows());
    auto reduced = [&](std::size_t idx) {
        std::size_t r = 0;
        for (int j = 0; j < k; ++j) r = (r << 1) | ((idx >> (num_qubits - 1 - keep[static_cast<std::size_t>(j)])) & 1U);
        return r;
    };
    std::size_t keep_mask = 0;
    for (int q : keep) keep_mask |= std::size_t{1} << (num_qubits - 1 - q);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            if ((i & ~keep_mask) != (j & ~keep_mask)) continue;
            out(static_cast<Eigen::Index>(reduced(i)), static_cast<Eigen::Index>(reduced(j))) += rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return out;
}

double state_fidelity(const DensityMatrix &rho, const StateVector &psi) { return psi.dot(rho * psi).real(); }

double uhlmann_fidelity(const DensityMatrix &rho, const DensityMatrix &sigma) {
    // Round-off eigenvalues would contribute their square roots (~1e-8), so
    // anything below kFloor counts as zero.
    constexpr double kFloor = 1e-13;
    auto root_of = [](double x) { return x > kFloor ? std::sqrt(x) : 0.0; };
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    const Eigen::VectorXd ev = es.eigenvalues().unaryExpr(root_of);
    const Eigen::MatrixXcd root = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    const Eigen::MatrixXcd inner = root * sigma * root;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(0.5 * (inner + inner.adjoint()));
    const double s = es2.eigenvalues().unaryExpr(root_of).sum();
    return s * s;
}

std::vector<TracePoint> fidelity_trace(const Circuit &c, const NoiseModel &noise) {
    noise.validate();
    const int n = c.num_qubits();
    StateVector psi = basis_state(n);
    DensityMatrix rho = projector(psi);
    std::vector<TracePoint> out;
    int index = 0;
    for (const auto &m : c.moments()) {
        bool itoffoli = false;
        for (const auto &g : m.gates) {
            const Eigen::MatrixXcd u = gate_unitary(g);
            apply_matrix(psi, n, u, g.qubits);
            apply_unitary(rho, n, u, g.qubits);
            apply_gate_noise(rho, n, g, noise);
            itoffoli = itoffoli || g.kind == GateKind::IToffoli;
        }
        out.push_back({index++, state_fidelity(rho, psi), itoffoli});
    }
    return out;
}

}  // namespace lcuresp
