#include "photonq/encoding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <set>
#include <sstream>

namespace photonq {

int SetupLayout::path_index(const std::string& path) const {
    for (int i = 0; i < n_paths(); ++i)
        if (paths[i] == path) return i;
    throw LookupError("unknown path '" + path + "'");
}

int SetupLayout::mode_index(int mode) const {
    for (int i = 0; i < n_modes(); ++i)
        if (modes[i] == mode) return i;
    throw LookupError("unknown mode " + std::to_string(mode));
}

int SetupLayout::slot_of(const std::string& path, int mode) const {
    return slot(path_index(path), mode_index(mode));
}

std::vector<int> SetupLayout::mode_qubits(const std::string& path, int mode) const {
    int first = first_qubit_of_slot(slot_of(path, mode));
    std::vector<int> qs(qubits_per_mode);
    for (int k = 0; k < qubits_per_mode; ++k) qs[k] = first + k;
    return qs;
}

std::vector<int> SetupLayout::path_qubits(const std::string& path) const {
    int p = path_index(path);
    int first = first_qubit_of_slot(slot(p, 0));
    std::vector<int> qs(n_modes() * qubits_per_mode);
    for (size_t k = 0; k < qs.size(); ++k) qs[k] = first + static_cast<int>(k);
    return qs;
}

SetupLayout build_layout(const std::vector<std::string>& paths,
                         const std::vector<int>& modes_per_path, int cutoff) {
    if (paths.empty()) throw ConfigError("layout needs at least one path");
    if (modes_per_path.empty()) throw ConfigError("layout needs at least one mode per path");
    if (cutoff < 1) throw ConfigError("cutoff must be >= 1");
    if (std::set<std::string>(paths.begin(), paths.end()).size() != paths.size())
        throw ConfigError("duplicate path label");
    if (std::set<int>(modes_per_path.begin(), modes_per_path.end()).size() != modes_per_path.size())
        throw ConfigError("duplicate mode label");

    SetupLayout layout;
    layout.paths = paths;
    layout.modes = modes_per_path;
    layout.cutoff = cutoff;
    // Smallest b with 2^b >= cutoff+1, i.e. enough bits for occupations 0..cutoff.
    layout.qubits_per_mode = std::bit_width(static_cast<unsigned>(cutoff));
    layout.total_qubits = layout.n_slots() * layout.qubits_per_mode;
    return layout;
}

int FockState::total() const {
    int t = 0;
    for (int n : occ) t += n;
    return t;
}

FockState vacuum(const SetupLayout& layout) { return FockState(layout.n_slots()); }

FockState make_fock(const SetupLayout& layout,
                    const std::vector<std::tuple<std::string, int, int>>& counts) {
    FockState f(layout.n_slots());
    for (const auto& [path, mode, n] : counts) f.occ[layout.slot_of(path, mode)] += n;
    return f;
}

std::string fock_to_bitstring(const SetupLayout& layout, const FockState& fock) {
    if (static_cast<int>(fock.occ.size()) != layout.n_slots())
        throw EncodingError("Fock state does not match layout");
    std::string bits(layout.total_qubits, '0');
    for (int s = 0; s < layout.n_slots(); ++s) {
        int n = fock.occ[s];
        if (n < 0 || n > layout.cutoff)
            throw EncodingError("occupation " + std::to_string(n) + " exceeds cutoff " +
                                std::to_string(layout.cutoff));
        int first = layout.first_qubit_of_slot(s);
        for (int k = 0; k < layout.qubits_per_mode; ++k)
            if (n >> (layout.qubits_per_mode - 1 - k) & 1) bits[first + k] = '1';
    }
    return bits;
}

FockState bitstring_to_fock(const SetupLayout& layout, const std::string& bits) {
    if (static_cast<int>(bits.size()) != layout.total_qubits)
        throw EncodingError("bitstring length does not match layout");
    FockState f(layout.n_slots());
    for (int s = 0; s < layout.n_slots(); ++s) {
        int first = layout.first_qubit_of_slot(s);
        int n = 0;
        for (int k = 0; k < layout.qubits_per_mode; ++k) {
            char c = bits[first + k];
            if (c != '0' && c != '1') throw EncodingError("bitstring must be 0/1");
            n = n << 1 | (c == '1');
        }
        if (n > layout.cutoff)
            throw EncodingError("bit pattern decodes to occupation above cutoff");
        f.occ[s] = n;
    }
    return f;
}

std::string fock_label(const SetupLayout& layout, const FockState& fock) {
    std::ostringstream out;
    bool any = false;
    for (int p = 0; p < layout.n_paths(); ++p)
        for (int m = 0; m < layout.n_modes(); ++m) {
            int n = fock.occ[layout.slot(p, m)];
            if (n == 0) continue;
            if (any) out << ' ';
            out << n << "@(" << layout.modes[m] << ',' << layout.paths[p] << ')';
            any = true;
        }
    return any ? out.str() : "vacuum";
}

// One component "n@(m,p)".
static void parse_fock_component(const SetupLayout& layout, const std::string& text,
                                 FockState& fock) {
    auto fail = [&] { throw SchemaError("bad Fock component '" + text + "', expected n@(m,p)"); };
    auto at = text.find('@');
    if (at == std::string::npos || at == 0) fail();
    if (at + 2 >= text.size() || text[at + 1] != '(' || text.back() != ')') fail();
    auto comma = text.find(',', at + 2);
    if (comma == std::string::npos) fail();
    int n = 0, m = 0;
    try {
        size_t used = 0;
        n = std::stoi(text.substr(0, at), &used);
        if (used != at) fail();
        std::string ms = text.substr(at + 2, comma - at - 2);
        m = std::stoi(ms, &used);
        if (used != ms.size()) fail();
    } catch (const std::exception&) {
        fail();
    }
    std::string path = text.substr(comma + 1, text.size() - comma - 2);
    if (n < 0) fail();
    fock.occ[layout.slot_of(path, m)] += n;
}

FockState parse_fock(const SetupLayout& layout, const std::vector<std::string>& components) {
    FockState f(layout.n_slots());
    for (const auto& c : components) parse_fock_component(layout, c, f);
    for (int n : f.occ)
        if (n > layout.cutoff) throw EncodingError("parsed occupation exceeds cutoff");
    return f;
}

// ---------------------------------------------------------------------------

char pauli_char(PauliOp op) {
    switch (op) {
        case PauliOp::X: return 'X';
        case PauliOp::Y: return 'Y';
        case PauliOp::Z: return 'Z';
    }
    return '?';
}

PauliSum& PauliSum::canonicalize() {
    std::sort(terms.begin(), terms.end(),
              [](const PauliTerm& a, const PauliTerm& b) { return a.ops < b.ops; });
    std::vector<PauliTerm> merged;
    for (const auto& t : terms) {
        if (!merged.empty() && merged.back().ops == t.ops)
            merged.back().coeff += t.coeff;
        else
            merged.push_back(t);
    }
    std::erase_if(merged, [](const PauliTerm& t) { return std::abs(t.coeff) < 1e-12; });
    terms = std::move(merged);
    return *this;
}

bool PauliSum::is_hermitian(double tol) const {
    PauliSum c = *this;
    c.canonicalize();
    for (const auto& t : c.terms)
        if (std::abs(t.coeff.imag()) > tol) return false;
    return true;
}

int PauliSum::max_qubit() const {
    int m = -1;
    for (const auto& t : terms)
        if (!t.ops.empty()) m = std::max(m, t.ops.rbegin()->first);
    return m;
}

PauliSum operator+(const PauliSum& a, const PauliSum& b) {
    PauliSum r = a;
    r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
    return r.canonicalize();
}

PauliSum operator-(const PauliSum& a, const PauliSum& b) {
    return a + cplx(-1.0, 0.0) * b;
}

// Single-qubit product table: a*b -> (phase, result op or identity).
static std::pair<cplx, std::optional<PauliOp>> pauli_mul(PauliOp a, PauliOp b) {
    if (a == b) return {cplx(1, 0), std::nullopt};
    static const cplx I(0, 1);
    // Cyclic: XY=iZ, YZ=iX, ZX=iY; reversed order flips the sign.
    int ia = static_cast<int>(a), ib = static_cast<int>(b);
    PauliOp c = static_cast<PauliOp>(3 - ia - ib);
    bool cyclic = (ib - ia + 3) % 3 == 1;
    return {cyclic ? I : -I, c};
}

static PauliTerm term_mul(const PauliTerm& a, const PauliTerm& b) {
    PauliTerm r;
    r.coeff = a.coeff * b.coeff;
    r.ops = a.ops;
    for (const auto& [q, op] : b.ops) {
        auto it = r.ops.find(q);
        if (it == r.ops.end()) {
            r.ops.emplace(q, op);
            continue;
        }
        auto [phase, res] = pauli_mul(it->second, op);
        r.coeff *= phase;
        if (res)
            it->second = *res;
        else
            r.ops.erase(it);
    }
    return r;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
    PauliSum r;
    r.terms.reserve(a.terms.size() * b.terms.size());
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms) r.terms.push_back(term_mul(ta, tb));
    return r.canonicalize();
}

PauliSum operator*(const cplx& c, const PauliSum& a) {
    PauliSum r = a;
    for (auto& t : r.terms) t.coeff *= c;
    return r.canonicalize();
}

PauliSum adjoint(const PauliSum& a) {
    PauliSum r = a;  // Pauli strings are Hermitian, only coefficients conjugate
    for (auto& t : r.terms) t.coeff = std::conj(t.coeff);
    return r.canonicalize();
}

PauliSum ketbra_qubit(int qubit, int i, int j) {
    const cplx half(0.5, 0), ihalf(0, 0.5);
    PauliSum r;
    if (i == 0 && j == 0) {  // (I + Z)/2
        r.terms.push_back({half, {}});
        r.terms.push_back({half, {{qubit, PauliOp::Z}}});
    } else if (i == 0 && j == 1) {  // (X + iY)/2
        r.terms.push_back({half, {{qubit, PauliOp::X}}});
        r.terms.push_back({ihalf, {{qubit, PauliOp::Y}}});
    } else if (i == 1 && j == 0) {  // (X - iY)/2
        r.terms.push_back({half, {{qubit, PauliOp::X}}});
        r.terms.push_back({-ihalf, {{qubit, PauliOp::Y}}});
    } else {  // (I - Z)/2
        r.terms.push_back({half, {}});
        r.terms.push_back({-half, {{qubit, PauliOp::Z}}});
    }
    return r;
}

PauliSum ketbra_binary(const std::vector<int>& qubits, int a, int b) {
    int nbits = static_cast<int>(qubits.size());
    PauliSum r;
    r.terms.push_back({cplx(1, 0), {}});
    for (int k = 0; k < nbits; ++k) {
        int ba = a >> (nbits - 1 - k) & 1;
        int bb = b >> (nbits - 1 - k) & 1;
        r = r * ketbra_qubit(qubits[k], ba, bb);
    }
    return r;
}

PauliSum creation_operator(const SetupLayout& layout, const std::string& path, int mode) {
    auto qs = layout.mode_qubits(path, mode);
    PauliSum r;
    for (int n = 0; n < layout.cutoff; ++n)
        r = r + cplx(std::sqrt(n + 1.0), 0) * ketbra_binary(qs, n + 1, n);
    return r;
}

PauliSum annihilation_operator(const SetupLayout& layout, const std::string& path, int mode) {
    return adjoint(creation_operator(layout, path, mode));
}

PauliSum number_operator(const SetupLayout& layout, const std::string& path, int mode) {
    auto qs = layout.mode_qubits(path, mode);
    PauliSum r;
    for (int n = 1; n <= layout.cutoff; ++n)
        r = r + cplx(n, 0) * ketbra_binary(qs, n, n);
    return r;
}

Eigen::MatrixXcd to_matrix(const PauliSum& sum, int n_qubits) {
    if (n_qubits < 0 || n_qubits > 12)
        throw ResourceError("dense PauliSum matrix limited to 12 qubits");
    if (sum.max_qubit() >= n_qubits)
        throw ValidationError("PauliSum acts outside the requested register");
    const size_t dim = size_t{1} << n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& t : sum.terms) {
        size_t flip = 0, ymask = 0, zmask = 0;
        int ny = 0;
        for (const auto& [q, op] : t.ops) {
            size_t bit = size_t{1} << (n_qubits - 1 - q);
            if (op == PauliOp::X) flip |= bit;
            if (op == PauliOp::Y) { flip |= bit; ymask |= bit; ++ny; }
            if (op == PauliOp::Z) zmask |= bit;
        }
        static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        for (size_t j = 0; j < dim; ++j) {
            int sign = std::popcount(j & (ymask | zmask)) & 1 ? -1 : 1;
            m(j ^ flip, j) += t.coeff * ipow[ny & 3] * static_cast<double>(sign);
        }
    }
    return m;
}

} // namespace photonq
