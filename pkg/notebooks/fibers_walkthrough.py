"""Walk through the fibers of F over a few targets, all in exact arithmetic.

Run with ``python3 notebooks/fibers_walkthrough.py``.
"""

from fractions import Fraction

from pinchuk import formulas
from pinchuk.elimination import elimination_data
from pinchuk.fibers import (classify, complex_fiber_count, discriminant_at, phi, real_fiber,
                            side_of_curve, split_W, zariski_extra_point)
from pinchuk.system import build_system, verify_identities

# %% The map and its Jacobian
system = build_system()
print("deg p =", system.p.degree(), " deg q =", system.q.degree())
print("deg jac =", system.jac.degree())
print("jac(0, 0) =", system.jac.evaluate({"x": 0, "y": 0}))

failed = [c.name for c in verify_identities() if not c.passed]
print("identity failures:", failed or "none")

# %% The eliminant W(fbar; a, b)
W = elimination_data().W
print("W has", len(W.terms), "terms")

# %% Generic targets: two real preimages, six complex ones
for a, b in [(3, 0), (3, 4000), (Fraction(-1, 2), 7)]:
    r = real_fiber(a, b)
    print(f"({a}, {b}): real {r.real_count}, complex {complex_fiber_count(a, b)},"
          f" side {side_of_curve(a, b)}")
    for p in r.preimages:
        x, y = p.center()
        print(f"    {p.source:8s} x ~ {float(x): .10f}  y ~ {float(y): .10f}")

# %% On the curve C one preimage escapes to infinity
a, b = phi(1)
r = real_fiber(a, b)
sp = split_W(a, b)
print(f"Phi(1) = ({a}, {b}): real {r.real_count}, escaping fbar roots {r.escaping_roots}")
print("  escaping factor:", sp.escaping)
print("  D =", discriminant_at(a, b))

# %% The asymptotic values with empty fiber
for a, b in [(0, 0), (-1, 0)]:
    print(f"({a}, {b}): real {real_fiber(a, b).real_count}")

# %% The Zariski closure of C picks up one more point, with a < -1, so no real s reaches it
print("extra point:", zariski_extra_point())
print("classify:", classify(*zariski_extra_point()).kind.value)

# %% The h-substitution, for reference
x, y = 3, 2
print("f, h at (3, 2):", formulas.f_of(x, y), formulas.h_of(x, y))
