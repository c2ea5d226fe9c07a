"""Find the annulus mismatch case and dissect it."""
import cmath
import math

import mpmath
import numpy as np

from kleintunnel import PrecisionPolicy, chf
from kleintunnel.specfun import _asymptotic_53, _series_ladder


def ref_chf(alpha, beta, z, dps=70):
    with mpmath.workdps(dps):
        a = mpmath.mpmathify(alpha)
        b = mpmath.mpmathify(beta)
        zz = mpmath.mpmathify(z)
        s = mpmath.mpc(1)
        t = mpmath.mpc(1)
        for k in range(100000):
            t = t * (a + k) / (b + k) * zz / (k + 1)
            s += t
            if abs(t) < mpmath.mpf(10) ** (-dps - 10) * abs(s) and k > 5:
                break
        return complex(s)


rng = np.random.default_rng(42)
p_series = PrecisionPolicy(series_switch_radius=40.0)
p_asym = PrecisionPolicy(series_switch_radius=20.0)
bad = []
for i in range(200):
    a = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
    b = 0.5 if rng.random() < 0.5 else 1.5
    zr = rng.uniform(24.0, 36.0)
    phi = rng.uniform(-math.pi, math.pi)
    z = zr * cmath.exp(1j * phi)
    v1 = chf(a, b, z, p_series)
    v2 = chf(a, b, z, p_asym)
    rel = abs(v1 - v2) / max(abs(v1), 1e-300)
    if rel > 1e-10:
        bad.append((rel, a, b, z))
bad.sort(reverse=True, key=lambda t: t[0])
print(f"{len(bad)} bad cases")
for rel, a, b, z in bad[:5]:
    ref = ref_chf(a, b, z)
    v_ser = chf(a, b, z, p_series)
    v_asy = chf(a, b, z, p_asym)
    val53, trunc, rnd = _asymptotic_53(a, b, z, 1000)
    print(f"rel={rel:.2e} a={a:.4f} b={b} z={z:.4f} (|z|={abs(z):.2f}, ph={cmath.phase(z):.4f})")
    print(f"   ref      = {ref}")
    print(f"   series   = {v_ser}  rel={abs(v_ser-ref)/abs(ref):.2e}")
    print(f"   via asym = {v_asy}  rel={abs(v_asy-ref)/abs(ref):.2e}")
    print(f"   raw asym53 = {val53} trunc={trunc:.2e} rnd={rnd:.2e}")
