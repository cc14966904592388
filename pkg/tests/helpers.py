"""Independent reference implementations used as oracles.

Everything here is built from first principles (explicit Kronecker products,
tensor reshapes, classical enumeration) and deliberately avoids the library's
own bit-arithmetic code paths, so the two sides of each comparison stay
independent.
"""

import numpy as np

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = {"I": I2, "X": SX, "Y": SY, "Z": SZ}


def kron_op(n, ops_by_site):
    """Explicit Kronecker product with site 0 leftmost (most significant)."""
    out = np.array([[1.0 + 0j]])
    for i in range(n):
        out = np.kron(out, ops_by_site.get(i, I2))
    return out


def dense_reference(lat):
    """Hamiltonian matrix assembled term by term with kron_op."""
    n = lat.n_sites
    H = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for (i, j, J) in lat.edges:
        H -= J * kron_op(n, {i: SZ, j: SZ})
    for i, hi in enumerate(lat.h):
        H -= hi * kron_op(n, {i: SX})
    for i, gi in enumerate(lat.g):
        H -= gi * kron_op(n, {i: SY})
    return H


def gibbs_reference(H, beta):
    """exp(-beta H)/Z via eigendecomposition of an explicit matrix."""
    w, v = np.linalg.eigh(H)
    e = np.exp(-beta * (w - w.min()))
    e /= e.sum()
    return (v * e) @ v.conj().T


def ptrace_reference(rho, n, keep):
    """Partial trace via tensor reshape and moveaxis (not bit bucketing)."""
    keep = sorted(keep)
    drop = [i for i in range(n) if i not in keep]
    m = len(drop)
    t = np.reshape(rho, (2,) * (2 * n))
    t = np.moveaxis(
        t,
        drop + [n + i for i in drop],
        list(range(n - m, n)) + list(range(2 * n - m, 2 * n)),
    )
    t = np.reshape(t, (2 ** (n - m), 2 ** m, 2 ** (n - m), 2 ** m))
    return np.trace(t, axis1=1, axis2=3)


def classical_chain_gibbs_diag(n, beta, h1):
    """Diagonal Gibbs weights of -h1 Z_1 - sum Z_k Z_{k+1} by enumeration.

    Returns the length-2^n probability vector (the state is diagonal in the
    computational basis, site 0 = most significant bit).
    """
    weights = np.zeros(2 ** n)
    for k in range(2 ** n):
        spins = [1 - 2 * ((k >> (n - 1 - i)) & 1) for i in range(n)]
        energy = -h1 * spins[0] - sum(
            spins[i] * spins[i + 1] for i in range(n - 1)
        )
        weights[k] = -beta * energy
    weights -= weights.max()
    weights = np.exp(weights)
    return weights / weights.sum()


def random_pure_state(rng, n):
    """Haar-ish random pure state as a density matrix."""
    v = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
    v /= np.linalg.norm(v)
    return np.outer(v, v.conj())


def random_mixed_state(rng, n):
    """Full-rank random mixed state (Wishart normalized)."""
    dim = 2 ** n
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_product_state(rng, n):
    """Random product of single-site pure states."""
    rho = np.array([[1.0 + 0j]])
    for _ in range(n):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        v /= np.linalg.norm(v)
        rho = np.kron(rho, np.outer(v, v.conj()))
    return rho
