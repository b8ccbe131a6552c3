#pragma once

#include <stdexcept>
#include <string>

namespace qising {

// Base class for all library errors.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Chain description violates a structural invariant (N too small, bad profile, ...).
class invalid_chain_error : public error {
public:
    using error::error;
};

// Argument outside the operation's domain (momentum index off the grid, bad site, ...).
class domain_error : public error {
public:
    using error::error;
};

// A quasiparticle mode with Lambda_k = 0 was hit where a finite gap is required.
class degenerate_mode_error : public error {
public:
    using error::error;
};

// Parameter regime the closed form does not cover (e.g. lambda_2 >= 1).
class unsupported_regime_error : public error {
public:
    using error::error;
};

// A normalization constraint (sum of couplings = 1) is violated.
class constraint_error : public error {
public:
    using error::error;
};

// Dense diagonalization requested beyond the hard size cap.
class capacity_error : public error {
public:
    using error::error;
};

// Interaction range the dense Hamiltonian builder does not implement.
class unsupported_interaction_error : public error {
public:
    using error::error;
};

// Fewer satisfying clauses exist than were requested.
class insufficient_clauses_error : public error {
public:
    using error::error;
};

// Eigensolver failure or residual check failure.
class solver_error : public error {
public:
    using error::error;
};

} // namespace qising
