"""Scratch cross-validation of the core physics (not part of the package)."""
import cmath
import math

import mpmath
import numpy as np

from kleintunnel import (
    Model, PhysParams, PrecisionPolicy, chf, sauter_basis, xi_argument,
    rect_step_matrix, sauter_step_matrix, barrier_matrix, phases,
    numeric_transfer_matrix, step_profile, barrier_profile, integrate,
    StateVector, current, t_step, t_barrier, t_barrier_phase_form, t_averaged,
    sauter_asymptotic, find_resonances, spike_density, momentum_p, momentum_q,
    d_ratio,
)

mpmath.mp.dps = 80


def ref_chf(alpha, beta, z, dps=80, max_terms=100000):
    """Brute-force series at high precision (independent oracle)."""
    with mpmath.workdps(dps):
        a = mpmath.mpmathify(alpha)
        b = mpmath.mpmathify(beta)
        zz = mpmath.mpmathify(z)
        s = mpmath.mpc(1)
        t = mpmath.mpc(1)
        for k in range(max_terms):
            t = t * (a + k) / (b + k) * zz / (k + 1)
            s += t
            if abs(t) < mpmath.mpf(10) ** (-dps - 10) * abs(s) and k > 5:
                break
        return complex(s)


print("== chf vs brute force ==")
cases = [
    (0.3 + 0.2j, 0.5, 2.0 - 3.0j),
    (1j * 2.0, 0.5, -25j),
    (1j * 8.3333333333333339, 0.5, -48.0249j),   # deep regime, asymptotic path
    (1j * 8.3333333333333339 + 1, 1.5, -48.0249j),
    (1j * 8.3333333333333339, 0.5, -133.1j),
    (0.7, 1.5, 40.0 + 0j),       # positive real big z
    (0.7, 1.5, -40.0 + 0j),      # negative real big z (cancellation, fallback?)
    (2.5j, 0.5, 35j),            # upper branch
    (-3.0, 0.5, -60j),           # polynomial alpha
]
for a, b, z in cases:
    got = chf(a, b, z)
    want = ref_chf(a, b, z)
    rel = abs(got - want) / abs(want)
    print(f"  a={a}, b={b}, z={z}: rel={rel:.2e}")
    assert rel < 5e-12, (a, b, z, got, want)

print("== chf trivials ==")
assert chf(0.37 - 2j, 0.5, 0.0) == 1.0
assert chf(0.0, 1.5, 5 - 2j) == 1.0
assert abs(chf(1.3 - 0.4j, 1.3 - 0.4j, 1 + 1j) - cmath.exp(1 + 1j)) < 1e-14

print("== Kummer transformation on random draws ==")
rng = np.random.default_rng(42)
worst = 0.0
for _ in range(200):
    a = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
    b = 0.5 if rng.random() < 0.5 else 1.5
    zr = rng.uniform(0.5, 29.0)
    phi = rng.uniform(-math.pi, math.pi)
    z = zr * cmath.exp(1j * phi)
    lhs = chf(a, b, z)
    rhs = cmath.exp(z) * chf(b - a, b, -z)
    rel = abs(lhs - rhs) / max(abs(lhs), 1e-300)
    worst = max(worst, rel)
print(f"  worst rel = {worst:.2e}")
assert worst < 1e-10

print("== series/asymptotic overlap annulus ==")
worst = 0.0
for _ in range(200):
    a = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
    b = 0.5 if rng.random() < 0.5 else 1.5
    zr = rng.uniform(24.0, 36.0)
    phi = rng.uniform(-math.pi, math.pi)
    z = zr * cmath.exp(1j * phi)
    p_series = PrecisionPolicy(series_switch_radius=40.0)
    p_asym = PrecisionPolicy(series_switch_radius=20.0)
    v1 = chf(a, b, z, p_series)
    v2 = chf(a, b, z, p_asym)
    rel = abs(v1 - v2) / max(abs(v1), 1e-300)
    worst = max(worst, rel)
print(f"  worst overlap mismatch = {worst:.2e}")

print("== xi / sauter basis current ==")
pp = PhysParams(E=1.8, U=3.0, ell=100.0)
print("  xi(ell) =", xi_argument(100.0, pp), " xi(0) =", xi_argument(0.0, pp))
pp5 = PhysParams(E=1.5, U=3.0, ell=5.0)
b0 = sauter_basis(0.0, pp5)
b1 = sauter_basis(5.0, pp5)
print(f"  current(0)={b0.current:.15g} current(ell)={b1.current:.15g} expect {1-4*(5.0/12.0):.15g}")

print("== sauter system ODE check for basis ==")
# f' = -i(E-U)f - m g ; g' = i(E-U)g - m f on the ramp
from scipy.integrate import solve_ivp
def sauter_rhs(x, y):
    u = pp5.U * x / pp5.ell
    w = pp5.E - u
    f = complex(y[0], y[1]); g = complex(y[2], y[3])
    fp = -1j * w * f - pp5.m * g
    gp = 1j * w * g - pp5.m * f
    return [fp.real, fp.imag, gp.real, gp.imag]
y0 = [b0.f.real, b0.f.imag, b0.g.real, b0.g.imag]
sol = solve_ivp(sauter_rhs, (0, 5.0), y0, method="DOP853", rtol=1e-12, atol=1e-12)
fl = complex(sol.y[0, -1], sol.y[1, -1]); gl = complex(sol.y[2, -1], sol.y[3, -1])
print(f"  |f(ell) ode-analytic| = {abs(fl-b1.f):.2e}, |g| diff = {abs(gl-b1.g):.2e}")

print("== rect matrix values (E=1.2, U=3, D) ==")
p3 = PhysParams(E=1.2, U=3.0)
mr = rect_step_matrix(p3, Model.DIRAC)
print(f"  p={momentum_p(p3):.10f} q={momentum_q(p3):.10f} D={d_ratio(p3, Model.DIRAC):.10f}")
print(f"  a={mr.a.real:.10f} b={mr.b.real:.10f} det={mr.det_numeric():.10f} target={mr.det_target():.10f}")

print("== sauter matrix vs rect as ell->0 ==")
for ell in (1e-1, 1e-2, 1e-3):
    ms = sauter_step_matrix(PhysParams(E=1.2, U=3.0, ell=ell))
    d = max(abs(ms.a - mr.a), abs(ms.b - mr.b))
    print(f"  ell={ell}: max|diff| = {d:.3e}")

print("== sauter matrix det identity ==")
ps = PhysParams(E=1.5, U=3.0, ell=5.0)
ms = sauter_step_matrix(ps)
print(f"  det={ms.det_numeric():.12f} target={ms.det_target():.12f} rel={(ms.det_numeric()-ms.det_target())/ms.det_target():.2e}")

print("== ODE oracle: rect step both models ==")
for model in (Model.KLEIN_GORDON, Model.DIRAC):
    prof = step_profile(PhysParams(E=1.2, U=3.0))
    num = numeric_transfer_matrix(prof, 1.2, model, tol=1e-11)
    ana = rect_step_matrix(p3, model)
    print(f"  {model}: |da|={abs(num.a-ana.a):.2e} |db|={abs(num.b-ana.b):.2e} cc={num.cc_residual:.2e}")

print("== ODE oracle vs sauter analytic (E=1.5,U=3,ell=5) ==")
prof = step_profile(ps)
num = numeric_transfer_matrix(prof, 1.5, Model.DIRAC, tol=1e-11)
print(f"  analytic a={ms.a:.12g}")
print(f"  numeric  a={num.a:.12g}")
print(f"  analytic b={ms.b:.12g}")
print(f"  numeric  b={num.b:.12g}")
print(f"  |da|={abs(num.a-ms.a):.2e} |db|={abs(num.b-ms.b):.2e}")

print("== barrier matrix vs sigma1-composition and unit det ==")
sigma1 = np.array([[0, 1], [1, 0]], dtype=complex)
def compose_barrier(step, params):
    p = momentum_p(params); q = momentum_q(params); s = params.ell + params.L
    M = step.as_matrix()
    Tq = np.diag([np.exp(1j * q * s), np.exp(-1j * q * s)])
    Tpm = np.diag([np.exp(-1j * p * s), np.exp(1j * p * s)])
    Mleft = Tq @ M @ Tpm
    Mright = sigma1 @ np.linalg.inv(Mleft) @ sigma1
    return Mright @ Mleft
pb = PhysParams(E=1.2, U=8.0, L=4.0)
st = rect_step_matrix(pb, Model.DIRAC)
bar = barrier_matrix(st, pb)
Mb = compose_barrier(st, pb)
print(f"  A diff={abs(bar.A - Mb[0,0]):.2e}  B diff={abs(bar.B - Mb[0,1]):.2e}")
print(f"  |A|^2-|B|^2 = {bar.det_numeric():.15f}")

print("== rect barrier vs Eq8/9 ==")
def t_rect_eq8(params, model):
    p = momentum_p(params); q = momentum_q(params)
    if model is Model.KLEIN_GORDON:
        f = params.U**2 * (params.U/2 - params.E)**2 / (p*p*q*q)
    else:
        f = params.m**2 * params.U**2 / (p*p*q*q)
    return 1.0 / (1.0 + f * math.sin(2*q*params.L)**2)
for model in (Model.KLEIN_GORDON, Model.DIRAC):
    tb = t_barrier(pb, model, "rect")
    te = t_rect_eq8(pb, model)
    print(f"  {model}: pipeline={tb.T:.15g} eq8={te:.15g} rel={(tb.T-te)/te:.2e}")

print("== phase-form vs direct ==")
for shape, params in (("rect", pb), ("sauter", PhysParams(E=1.5, U=3.0, ell=3.0, L=2.0))):
    t1 = t_barrier(params, Model.DIRAC, shape)
    t2 = t_barrier_phase_form(params, Model.DIRAC, shape)
    print(f"  {shape}: direct={t1.T:.15g} phase={t2.T:.15g} rel={abs(t1.T-t2.T)/t1.T:.2e}")

print("== averaged T paper chain ==")
for de, want in ((0.1, 0.313), (0.5, 0.647)):
    pa = PhysParams(E=0.51 + de, U=2.5, m=0.51)
    ta = t_averaged(pa, Model.DIRAC, "rect")
    print(f"  Ebar-m={de}: Tavg={ta.T:.6f} (paper {want})")

print("== high-U limits ==")
ph = PhysParams(E=1.2, U=1e4)
td = t_step(ph, Model.DIRAC, "rect")
tk = t_step(ph, Model.KLEIN_GORDON, "rect")
lim = 2 * momentum_p(ph) / (ph.E + momentum_p(ph))
print(f"  Dirac T={td.T:.6f} limit={lim:.6f} |diff|={abs(td.T-lim):.2e}; KG T={tk.T:.2e}")

print("== resonances rect U=8 L=4 ==")
rep = find_resonances(PhysParams(E=2.0, U=8.0, L=4.0), Model.DIRAC, "rect")
print(f"  count={rep.count}")
en_expected = sorted(8.0 - math.sqrt(1.0 + (n*math.pi/8.0)**2) for n in range(1, 18))
print(f"  max |e - expected| = {max(abs(a-b) for a,b in zip(rep.energies, en_expected)):.2e}")
sd = spike_density(PhysParams(E=2.0, U=8.0, L=4.0), Model.DIRAC, "rect", (1.0, 7.0))
print(f"  spike_density full zone = {sd}")

print("== fig8 peak ==")
p8 = PhysParams(E=1.5, U=3.0, ell=3.0, L=0.0)
rep8 = find_resonances(p8, Model.DIRAC, "sauter")
print(f"  resonances: {rep8.count} at {rep8.energies}")
best = max(t_barrier(PhysParams(E=e, U=3.0, ell=3.0), Model.DIRAC, "sauter").T for e in rep8.energies) if rep8.energies else 0.0
print(f"  max T at resonances = {best:.9f}")

print("== fig10 scale: averaged log10 at E=1.2 ==")
p10 = PhysParams(E=1.2, U=3.0, ell=100.0)
pol106 = PrecisionPolicy(significand_bits=106)
ta10 = t_averaged(p10, Model.DIRAC, "sauter", pol106)
asym = sauter_asymptotic(p10)
print(f"  exact log10 Tavg = {ta10.log10_T:.4f}; asym step={asym.log10_t_step:.4f} avg={asym.log10_t_avg_barrier:.4f}")

print("== criterion 8 pattern ==")
prev = None
for ell in (50.0, 100.0, 200.0):
    pe = PhysParams(E=1.8, U=3.0, ell=ell)
    t_exact = t_step(pe, Model.DIRAC, "sauter", pol106)
    asym = sauter_asymptotic(pe)
    dev = t_exact.log10_T - asym.log10_t_step
    ratio = (prev / dev) if prev is not None else float("nan")
    print(f"  ell={ell}: exact={t_exact.log10_T:.6f} asym={asym.log10_t_step:.6f} dev={dev:.6f} ratio_prev/this={ratio:.3f}")
    prev = dev

print("== U->infty monotone approach ==")
prev = None
ok = True
for u in (20, 40, 80, 160, 320, 640):
    pu = PhysParams(E=1.2, U=float(u))
    d = abs(t_step(pu, Model.DIRAC, "rect").T - lim)
    if prev is not None and d > prev:
        ok = False
    prev = d
print(f"  monotone: {ok}")

print("ALL SCRATCH CHECKS DONE")
