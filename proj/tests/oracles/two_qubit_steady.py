"""Independent numpy oracle for the two-qubit steady-state heat currents.

Builds the 16x16 Liouvillian by hand from sigma operators (no code shared
with the C++ library), takes its null vector with numpy's SVD and prints
the heat currents. The printed values are frozen in tests/oracle_values.hpp
and used by the unit and acceptance tests.
"""
import numpy as np

KAPPA = 1.0 / (2.0 * np.pi)
sx = np.array([[0, 1], [1, 0]], dtype=complex)
sz = np.array([[1, 0], [0, -1]], dtype=complex)
sp = np.array([[0, 1], [0, 0]], dtype=complex)  # |0><1|, raises energy (|0> has +E/2)
sm = sp.conj().T
i2 = np.eye(2)


def rates(e, t, beta_c):
    n = 1.0 / np.expm1(e / t)
    return 2 * np.pi * KAPPA * (n + 1) * beta_c**2, 2 * np.pi * KAPPA * n * beta_c**2


def dissipator(a, rate):
    ada = a.conj().T @ a
    d = a.shape[0]
    eye = np.eye(d)
    return rate * (np.kron(a.conj(), a) - 0.5 * np.kron(eye, ada) - 0.5 * np.kron(ada.T, eye))


def steady(e1, e2, t1, t2, alpha, beta_c):
    h1 = 0.5 * e1 * np.kron(sz, i2)
    h2 = 0.5 * e2 * np.kron(i2, sz)
    hs = h1 + h2
    # Filtered interaction: only the energy-conserving flip-flop survives
    # when the qubits are resonant.
    hi = alpha * (np.kron(sp, sm) + np.kron(sm, sp)) if e1 == e2 else np.zeros((4, 4))
    h = hs + hi
    eye = np.eye(4)
    lh = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    d1 = dissipator(np.kron(sm, i2), rates(e1, t1, beta_c)[0]) + \
        dissipator(np.kron(sp, i2), rates(e1, t1, beta_c)[1])
    d2 = dissipator(np.kron(i2, sm), rates(e2, t2, beta_c)[0]) + \
        dissipator(np.kron(i2, sp), rates(e2, t2, beta_c)[1])
    ell = lh + d1 + d2
    _, s, vh = np.linalg.svd(ell)
    v = vh.conj().T[:, -1]
    rho = v.reshape(4, 4, order="F")
    rho = rho / np.trace(rho)
    rho = 0.5 * (rho + rho.conj().T)
    def q(d):
        drho = (d @ rho.reshape(-1, order="F")).reshape(4, 4, order="F")
        return np.trace(hs @ drho).real
    return q(d1), q(d2), s[-2:]


if __name__ == "__main__":
    np.set_printoptions(precision=17)
    for t1 in (0.5, 1.0, 1.5, 2.0):
        q1, q2, s = steady(1.0, 1.0, t1, 1.0, 0.01, 0.01)
        print(f"T1={t1}: Q1={float(q1)!r} Q2={float(q2)!r} sum={float(q1 + q2)!r}")
    for a in (0.005, 0.01, 0.02):
        q1, q2, s = steady(1.0, 1.0, 2.0, 1.0, a, a)
        print(f"alpha=beta={a}: Q1={float(q1)!r}")
    q1, q2, s = steady(1.0, 1.5, 2.0, 1.0, 0.01, 0.01)
    print(f"detuned: Q1={float(q1)!r} Q2={float(q2)!r}")
