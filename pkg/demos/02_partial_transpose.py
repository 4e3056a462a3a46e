"""The partial transpose test on hand-picked and random states."""

import numpy as np

from pptmc import BipartiteShape, DensityMatrix, RngStream, partial_transpose, ppt_verdict, sample_density

np.set_printoptions(precision=4, suppress=True)

print("=" * 72)
print("A maximally entangled two-qubit state fails the test")
print("=" * 72)
psi = np.zeros(4)
psi[0] = psi[3] = 1 / np.sqrt(2)
bell = np.outer(psi, psi)
print("rho =")
print(bell)
pt = partial_transpose(bell, (2, 2))
print("partial transpose over the second qubit =")
print(pt)
print("its eigenvalues:", np.round(np.linalg.eigvalsh(pt), 4))
verdict = ppt_verdict(DensityMatrix(bell, BipartiteShape(2, 2, 1, "real"),
                                    spectrum=np.array([0.0, 0.0, 0.0, 1.0])))
print(f"verdict: is_ppt={verdict.is_ppt}, min PT eigenvalue={verdict.min_pt_eigenvalue:+.4f}")

print()
print("=" * 72)
print("A product state passes it")
print("=" * 72)
rho = np.kron(np.eye(2) / 2, np.diag([0.6, 0.3, 0.1]))
dm = DensityMatrix(rho, BipartiteShape(2, 3, 6, "real"), spectrum=np.linalg.eigvalsh(rho))
verdict = ppt_verdict(dm)
print(f"verdict: is_ppt={verdict.is_ppt}, min PT eigenvalue={verdict.min_pt_eigenvalue:+.4f}")
print(f"det(rho)={verdict.det_rho:.3e}, det(PT)={verdict.det_pt:.3e}")

print()
print("=" * 72)
print("Random full-rank two-qubit states: verdicts and determinants")
print("=" * 72)
stream = RngStream(seed=5)
shape = BipartiteShape(2, 2, 4, "complex")
header = f"{'is_ppt':>7} {'min PT eig':>12} {'det(rho)':>12} {'det(PT)':>12} {'|PT| > |rho|':>13}"
print(header)
for _ in range(10):
    v = ppt_verdict(sample_density(shape, stream))
    print(f"{str(v.is_ppt):>7} {v.min_pt_eigenvalue:+12.5f} {v.det_rho:12.3e} "
          f"{v.det_pt:+12.3e} {str(v.det_pt > v.det_rho):>13}")
print()
print("Among PPT states the last column splits evenly; entangled states")
print("always have det(PT) < 0 on a 2x2 system.")
