"""Local dephasing: the spectrum is a vertical segment plus a real interval.

Walks through the fiber picture at a few momenta, solves the secular
equation, and compares the assembled cloud with the closed form, including
the connectivity transition at G = 4.
"""

import numpy as np

import lindblad_spectra as ls
from lindblad_spectra.spectrum import cloud_components, fiber_jump_roots

G = 2.0
model = ls.builtin_model("dephasing", G)

print(f"Local dephasing at G = {G}")
print("fiber at q = pi/2:")
f = ls.fiber(model, np.pi / 2)
for l, v in sorted(f.t_symbol.as_dict().items()):
    print(f"  diagonal {l:+d}: {v:.4f}")
print(f"  jump vectors: Gamma_L = Gamma_R = sqrt(G) e_0, |Gamma| = {np.linalg.norm(f.gamma_l):.4f}")

print("\nsecular roots z(q) = -G + sqrt(G^2 + 8(cos q - 1)) where real:")
for q in (0.0, 0.5, 1.0):
    roots = fiber_jump_roots(ls.fiber(model, q))
    print(f"  q = {q:.1f}: {[f'{z.real:+.4f}' for z in roots]}")

cloud = ls.SpectrumCloud.concat(
    [ls.nhe_spectrum(model, 512, 512), ls.jump_curve(model, 512)]
)
ref = ls.closed_form_spectrum("dephasing", G).sample(2048)
print(f"\ncloud size {len(cloud)}, Hausdorff distance to closed form: "
      f"{ls.hausdorff_distance(cloud.z, ref):.5f}")

print("\nconnectivity transition (two spectral components appear above G = 4):")
for g in (3.5, 4.0, 4.5):
    mg = ls.builtin_model("dephasing", g)
    c = ls.SpectrumCloud.concat([ls.nhe_spectrum(mg, 256, 512), ls.jump_curve(mg, 256)])
    print(f"  G = {g}: {cloud_components(c.z, 0.05)} component(s)")
