#pragma once

#include "photonq/common.hpp"

#include <Eigen/Dense>

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace photonq {

// Qubit register layout for an optical setup.
//
// Photon counts 0..cutoff are stored per (path, mode) as a binary integer,
// most-significant bit first, across qubits_per_mode = ceil(log2(cutoff+1))
// qubits. Registers are laid out path-major, mode-minor, in the order the
// labels were given, so the (path, mode) ranges are disjoint, contiguous and
// cover [0, total_qubits) exactly.
struct SetupLayout {
    std::vector<std::string> paths;
    std::vector<int> modes;  // same mode list for every path
    int cutoff = 1;
    int qubits_per_mode = 1;
    int total_qubits = 0;

    int n_paths() const { return static_cast<int>(paths.size()); }
    int n_modes() const { return static_cast<int>(modes.size()); }
    int n_slots() const { return n_paths() * n_modes(); }

    int path_index(const std::string& path) const;  // throws LookupError
    int mode_index(int mode) const;                 // throws LookupError

    // Slot = flat index of a (path, mode) register.
    int slot(int path_idx, int mode_idx) const { return path_idx * n_modes() + mode_idx; }
    int slot_of(const std::string& path, int mode) const;
    int first_qubit_of_slot(int slot) const { return slot * qubits_per_mode; }

    std::vector<int> mode_qubits(const std::string& path, int mode) const;
    std::vector<int> path_qubits(const std::string& path) const;
};

SetupLayout build_layout(const std::vector<std::string>& paths,
                         const std::vector<int>& modes_per_path, int cutoff);

// Occupation-number basis state; occ[slot] counts photons in that register.
struct FockState {
    std::vector<int> occ;

    explicit FockState(int n_slots = 0) : occ(n_slots, 0) {}
    int total() const;
    auto operator<=>(const FockState&) const = default;
};

FockState vacuum(const SetupLayout& layout);
FockState make_fock(const SetupLayout& layout,
                    const std::vector<std::tuple<std::string, int, int>>& counts);

// Binary encoding of a Fock state ('0'/'1' characters, index = qubit index).
std::string fock_to_bitstring(const SetupLayout& layout, const FockState& fock);
FockState bitstring_to_fock(const SetupLayout& layout, const std::string& bits);

// Human-readable label: "n@(m,p)" per occupied register joined by spaces,
// "vacuum" when empty. parse_fock accepts a list of such components.
std::string fock_label(const SetupLayout& layout, const FockState& fock);
FockState parse_fock(const SetupLayout& layout, const std::vector<std::string>& components);

// ---------------------------------------------------------------------------
// Pauli algebra.

enum class PauliOp : int { X = 0, Y = 1, Z = 2 };

char pauli_char(PauliOp op);

// coeff * tensor product of single-qubit Paulis; identity on absent qubits.
struct PauliTerm {
    cplx coeff{1.0, 0.0};
    std::map<int, PauliOp> ops;  // qubit index -> operator
};

// Sum of PauliTerms. canonicalize() sorts terms lexicographically by their
// (qubit, operator) sequences, merges equal operator maps, and drops terms
// with |coeff| < 1e-12.
struct PauliSum {
    std::vector<PauliTerm> terms;

    PauliSum() = default;
    PauliSum(std::initializer_list<PauliTerm> ts) : terms(ts) {}

    PauliSum& canonicalize();
    bool is_hermitian(double tol = 1e-12) const;  // canonical coeffs all real
    int max_qubit() const;                        // -1 when empty or identity-only
};

PauliSum operator+(const PauliSum& a, const PauliSum& b);
PauliSum operator-(const PauliSum& a, const PauliSum& b);
PauliSum operator*(const PauliSum& a, const PauliSum& b);
PauliSum operator*(const cplx& c, const PauliSum& a);
PauliSum adjoint(const PauliSum& a);

// |i><j| on one qubit / |a><b| over a big-endian register, as PauliSums.
// All bosonic-operator translations are routed through these two.
PauliSum ketbra_qubit(int qubit, int i, int j);
PauliSum ketbra_binary(const std::vector<int>& qubits, int a, int b);

// Truncated ladder and number operators on a (path, mode) register.
PauliSum creation_operator(const SetupLayout& layout, const std::string& path, int mode);
PauliSum annihilation_operator(const SetupLayout& layout, const std::string& path, int mode);
PauliSum number_operator(const SetupLayout& layout, const std::string& path, int mode);

// Dense matrix on n_qubits (basis index bit n-1-q holds qubit q; qubit 0 is
// the most significant bit, matching the bitstring encoding). n_qubits <= 12.
Eigen::MatrixXcd to_matrix(const PauliSum& sum, int n_qubits);

} // namespace photonq
