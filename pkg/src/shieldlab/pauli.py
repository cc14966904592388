"""Phase-tracked Pauli words and their dense realizations.

Conventions fixed here and used repo-wide:

* Site ordering: the basis-index bit of site 0 is the **most significant**
  bit. A computational basis index ``k`` assigns to site ``i`` the bit
  ``(k >> (n - 1 - i)) & 1`` (0 = spin up, +1 eigenvalue of Z).
* Phases are restricted to the fourth roots of unity ``i**k``; arbitrary
  complex weights live only on dense matrices.
* Dense realizations are refused above ``dense_cap()`` sites (default 12,
  dimension 4096); the ``SHIELDLAB_DENSE_CAP`` environment variable may
  lower (never raise) the cap.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import DimensionOverflowError, SizeMismatchError

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

_SINGLE = {"I": PAULI_I, "X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z}

LETTERS = "IXYZ"

#: hard ceiling for dense matrices; 2^12 = 4096, ~268 MB per complex matrix
DENSE_SITE_CAP = 12

# product table: (a, b) -> (c, k) meaning  a . b = i**k . c   (single site)
_MUL = {
    ("I", "I"): ("I", 0), ("I", "X"): ("X", 0), ("I", "Y"): ("Y", 0), ("I", "Z"): ("Z", 0),
    ("X", "I"): ("X", 0), ("X", "X"): ("I", 0), ("X", "Y"): ("Z", 1), ("X", "Z"): ("Y", 3),
    ("Y", "I"): ("Y", 0), ("Y", "X"): ("Z", 3), ("Y", "Y"): ("I", 0), ("Y", "Z"): ("X", 1),
    ("Z", "I"): ("Z", 0), ("Z", "X"): ("Y", 1), ("Z", "Y"): ("X", 3), ("Z", "Z"): ("I", 0),
}

_PHASES = (1 + 0j, 1j, -1 + 0j, -1j)
_PHASE_TEXT = ("+", "+i", "-", "-i")


def dense_cap() -> int:
    """Current dense-site cap; the environment may only lower the default."""
    raw = os.environ.get("SHIELDLAB_DENSE_CAP")
    if raw is None:
        return DENSE_SITE_CAP
    try:
        return min(DENSE_SITE_CAP, int(raw))
    except ValueError:
        return DENSE_SITE_CAP


def check_dense_cap(n_sites: int) -> None:
    cap = dense_cap()
    if n_sites > cap:
        raise DimensionOverflowError(
            f"dense realization of {n_sites} sites exceeds the cap of {cap}"
        )


def basis_bit(index: int, site: int, n_sites: int) -> int:
    """Bit of ``site`` inside basis index ``index`` (site 0 = MSB)."""
    return (index >> (n_sites - 1 - site)) & 1


@dataclass(frozen=True)
class PauliString:
    """A word over {I, X, Y, Z} with a fourth-root-of-unity phase.

    ``letters[i]`` is the letter on site ``i``; ``phase_k`` encodes the
    scalar ``i**phase_k``.
    """

    letters: str
    phase_k: int = 0

    def __post_init__(self) -> None:
        if any(c not in LETTERS for c in self.letters):
            raise ValueError(f"invalid Pauli letters {self.letters!r}")
        object.__setattr__(self, "phase_k", self.phase_k % 4)

    # -- constructors ---------------------------------------------------

    @classmethod
    def identity(cls, n_sites: int) -> "PauliString":
        return cls("I" * n_sites)

    @classmethod
    def single(cls, n_sites: int, site: int, letter: str) -> "PauliString":
        if not 0 <= site < n_sites:
            raise SizeMismatchError(f"site {site} outside 0..{n_sites - 1}")
        word = ["I"] * n_sites
        word[site] = letter
        return cls("".join(word))

    @classmethod
    def from_sites(cls, n_sites: int, letters_by_site: dict[int, str],
                   phase_k: int = 0) -> "PauliString":
        word = ["I"] * n_sites
        for site, letter in letters_by_site.items():
            if not 0 <= site < n_sites:
                raise SizeMismatchError(f"site {site} outside 0..{n_sites - 1}")
            word[site] = letter
        return cls("".join(word), phase_k)

    # -- basic structure -------------------------------------------------

    @property
    def n_sites(self) -> int:
        return len(self.letters)

    @property
    def phase(self) -> complex:
        return _PHASES[self.phase_k]

    @property
    def is_identity_word(self) -> bool:
        return set(self.letters) <= {"I"}

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.letters) if c != "I")

    def letter(self, site: int) -> str:
        return self.letters[site]

    def restrict(self, sites) -> "PauliString":
        """Word restricted to ``sites`` (ascending); phase is kept."""
        kept = sorted(sites)
        return PauliString("".join(self.letters[i] for i in kept), self.phase_k)

    # -- algebra ----------------------------------------------------------

    def __mul__(self, other: "PauliString") -> "PauliString":
        if self.n_sites != other.n_sites:
            raise SizeMismatchError(
                f"cannot multiply words on {self.n_sites} and {other.n_sites} sites"
            )
        k = self.phase_k + other.phase_k
        out = []
        for a, b in zip(self.letters, other.letters):
            c, dk = _MUL[(a, b)]
            out.append(c)
            k += dk
        return PauliString("".join(out), k)

    def left_parity(self) -> int:
        """Number of sites carrying Z or Y, mod 2.

        Products of generators drawn from {Z_i Z_j, X_i} preserve this
        parity: each factor flips the Z/Y character of zero or two sites.
        """
        return sum(1 for c in self.letters if c in "ZY") % 2

    def trace(self) -> complex:
        """Exact trace: ``2**n * phase`` for the identity word, else 0."""
        if self.is_identity_word:
            return (2 ** self.n_sites) * self.phase
        return 0j

    def to_dense(self) -> np.ndarray:
        """Kronecker realization under the site-0-is-MSB convention."""
        check_dense_cap(self.n_sites)
        out = np.array([[self.phase]])
        for c in self.letters:
            out = np.kron(out, _SINGLE[c])
        return out

    def basis_action(self) -> tuple[int, np.ndarray]:
        """Action on computational basis states, without the dense matrix.

        Returns ``(mask, coefs)`` such that P|k> = coefs[k] |k ^ mask>:
        X and Y letters contribute bit flips to ``mask``; Z and Y letters
        contribute signs, and each Y one factor of i. Lets dim-sized vectors
        be transformed in O(dim) instead of O(dim**2).
        """
        check_dense_cap(self.n_sites)
        n = self.n_sites
        mask = 0
        coefs = np.full(1 << n, self.phase, dtype=complex)
        idx = np.arange(1 << n)
        for i, c in enumerate(self.letters):
            bit = 1 << (n - 1 - i)
            if c in "XY":
                mask |= bit
            if c in "ZY":
                coefs = coefs * (1.0 - 2.0 * ((idx & bit) != 0))
            if c == "Y":
                coefs = coefs * 1j
        return mask, coefs

    def apply(self, psi: np.ndarray) -> np.ndarray:
        """P @ psi for a state vector (or a stack of column vectors)."""
        mask, coefs = self.basis_action()
        idx = np.arange(coefs.size) ^ mask
        if psi.ndim == 1:
            return coefs[idx] * psi[idx]
        return coefs[idx, None] * psi[idx, :]

    # -- text form ---------------------------------------------------------

    def to_text(self) -> str:
        """Render like ``"+i Z0 X3"``; omitted sites are I."""
        parts = [_PHASE_TEXT[self.phase_k]]
        parts.extend(f"{c}{i}" for i, c in enumerate(self.letters) if c != "I")
        return " ".join(parts)

    @classmethod
    def from_text(cls, text: str, n_sites: int) -> "PauliString":
        tokens = text.split()
        phase_k = 0
        if tokens and tokens[0] in _PHASE_TEXT:
            phase_k = _PHASE_TEXT.index(tokens[0])
            tokens = tokens[1:]
        word = ["I"] * n_sites
        for tok in tokens:
            letter, index = tok[0].upper(), tok[1:]
            if letter not in "XYZ" or not index.isdigit():
                raise ValueError(f"bad Pauli token {tok!r}")
            site = int(index)
            if not 0 <= site < n_sites:
                raise SizeMismatchError(f"site {site} outside 0..{n_sites - 1}")
            if word[site] != "I":
                raise ValueError(f"site {site} assigned twice in {text!r}")
            word[site] = letter
        return cls("".join(word), phase_k)

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"PauliString({self.to_text()!r})"
