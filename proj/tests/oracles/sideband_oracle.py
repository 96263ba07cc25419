# Copyright 2026 The crheat Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Second-order rate-equation oracle for the sideband-cooling floor.

The two-level atom (carrier drive + decay) is treated exactly; the motion
couples through V = b X + b^dag X^dag and the rates
  A- = int dt e^{+i nu t} <X^dag(t) X(0)>,  A+ = int dt e^{-i nu t} <X(t) X^dag(0)>
come from quantum-regression resolvents. n_ss = A+ / (A- - A+).
Also solves the full composite model for comparison.
"""
import numpy as np


def atom_liouvillian(delta, omega, gamma):
    sm = np.array([[0, 1], [0, 0]], complex)
    sp = sm.conj().T
    h = -delta * sp @ sm + 0.5 * omega * (sp + sm)
    i2 = np.eye(2)
    # row-major vec: vec(A rho B) = kron(A, B^T) vec(rho)
    L = -1j * (np.kron(h, i2) - np.kron(i2, h.T))
    L += gamma * (np.kron(sm, sm.conj()) - 0.5 * np.kron(sp @ sm, i2) - 0.5 * np.kron(i2, (sp @ sm).T))
    return L, sm, sp


def steady(L):
    w, v = np.linalg.eig(L)
    k = np.argmin(abs(w))
    r = v[:, k].reshape(2, 2)
    return r / np.trace(r)


def spectrum(L, rho, a, b, w):
    # int_{-inf}^{inf} e^{i w t} <a(t) b(0)>; 2 Re of the half-line resolvent
    x = (b @ rho).reshape(-1)
    y = np.linalg.solve(-(L + 1j * w * np.eye(4)), x)
    half = np.trace(a @ y.reshape(2, 2))
    return 2 * half.real


def oracle(nu, gamma, omega, eta, include_cr):
    L, sm, sp = atom_liouvillian(-nu, omega, gamma)
    rho = steady(L)
    x = 0.5 * eta * omega * (sp + sm if include_cr else sp)
    am = spectrum(L, rho, x.conj().T, x, nu)
    ap = spectrum(L, rho, x, x.conj().T, -nu)
    return ap / (am - ap), am, ap


def full(nu, gamma, omega, eta, include_cr, n):
    b = np.diag(np.sqrt(np.arange(1, n)), 1).astype(complex)
    sm = np.array([[0, 1], [0, 0]], complex)
    sp = sm.conj().T
    i2, iN = np.eye(2), np.eye(n)
    h = (nu * np.kron(sp @ sm, iN) + nu * np.kron(i2, b.conj().T @ b)
         + 0.5 * omega * np.kron(sp + sm, iN)
         + 0.5 * eta * omega * (np.kron(sp, b) + np.kron(sm, b.conj().T)))
    if include_cr:
        h += 0.5 * eta * omega * (np.kron(sp, b.conj().T) + np.kron(sm, b))
    l = np.kron(sm, iN)
    d = 2 * n
    I = np.eye(d)
    M = -1j * (np.kron(h, I) - np.kron(I, h.T)) + gamma * (
        np.kron(l, l.conj()) - 0.5 * np.kron(l.conj().T @ l, I) - 0.5 * np.kron(I, (l.conj().T @ l).T))
    M[-1, :] = np.eye(d).reshape(-1)
    rhs = np.zeros(d * d, complex)
    rhs[-1] = 1
    rho = np.linalg.solve(M, rhs).reshape(d, d)
    nb = np.kron(i2, np.diag(np.arange(n)))
    return np.trace(nb @ rho).real


if __name__ == "__main__":
    for cr in (False, True):
        o, am, ap = oracle(10, 1, 1, 0.1, cr)
        f = full(10, 1, 1, 0.1, cr, 15)
        f2 = full(10, 1, 1, 0.1, cr, 25)
        print(f"include_cr={cr}: oracle n={o:.10g} (A-={am:.6g}, A+={ap:.6g}) full N=15 {f:.10g} N=25 {f2:.10g} rel={(f-o)/o:.3g}")
