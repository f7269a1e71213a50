"""Evaluating string diagrams written in the text format.

Run with ``python3 demos/string_diagrams.py``.
"""
from __future__ import annotations

import numpy as np

from tubecat import builtin_category, evaluate, evaluate_cylinder, parse_diagram, trace
from tubecat.homspace import Morphism

cat = builtin_category('ising')

# the Hopf link of sigma and psi: trace of the double braiding
d = parse_diagram("""
in sigma psi
over        # sigma passes over psi
over        # and back again
""", cat)
print('Hopf link (sigma, psi):', np.round(trace(evaluate(cat, d)), 12))

# zig-zag: the unit of the pairing of sigma with its dual
d = parse_diagram('in sigma; id | cup sigma*; cap sigma | id; out sigma', cat)
print('zig-zag equals identity:', evaluate(cat, d).allclose(Morphism.identity(cat, 'sigma')))

# a box bound to a morphism, pushed onto a cylinder wrapped by the unit strand
rng = np.random.default_rng(1)
f = Morphism.random(cat, 'sigma,sigma', 'psi', rng)
d = parse_diagram('glue 1; in 1 sigma sigma; id | box f; over; out psi 1', cat, {'f': f})
m = evaluate_cylinder(cat, d, {'f': f})
print('cylinder component agrees with f:', np.allclose(m.coeffs, f.coeffs))

# syntax errors carry line and column
try:
    parse_diagram('in sigma\nid | over', cat)
except ValueError as err:
    print('error:', err)
