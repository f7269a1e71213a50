"""Walk through the tube category of the Fibonacci category.

Run with ``python3 demos/fibonacci_tube_algebra.py``.
"""
from __future__ import annotations

from itertools import product

import numpy as np

from tubecat import builtin_category, s_matrix, tube_algebra
from tubecat.homspace import hom_dim
from tubecat.tube import TubeMorphism, tube_compose, tube_hom_dim, tube_identity

np.set_printoptions(precision=4, suppress=True)

cat = builtin_category('fibonacci')
tau = cat.index('tau')
print(f'labels {cat.labels}, quantum dimensions {cat.qdim.real}, global dimension {cat.global_dim.real:.4f}')
print('S-matrix (Hopf link values):')
print(s_matrix(cat).real)

# Hom spaces of the tube category: sum over the strand R wrapping the cylinder
print('\ndim Hom_TC(X, Y) = sum_R dim Hom(R X, Y R)')
for X, Y in [('', ''), ('tau', 'tau'), ('tau,tau', 'tau,tau')]:
    parts = [hom_dim(cat, (R,) + cat.word(X), cat.word(Y) + (R,)) for R in range(cat.num_labels)]
    print(f'  X=[{X}] Y=[{Y}]: {" + ".join(map(str, parts))} = {tube_hom_dim(cat, X, Y)}')

# composition is stacking of cylinders; the identity lives on the unit strand
rng = np.random.default_rng(0)
f = TubeMorphism.random(cat, 'tau', 'tau', rng)
g = TubeMorphism.random(cat, 'tau', 'tau', rng)
h = TubeMorphism.random(cat, 'tau', 'tau', rng)
print('\nidentity residual     ', (tube_compose(tube_identity(cat, 'tau'), f) - f).max_abs())
print('associativity residual', (tube_compose(h, tube_compose(g, f)) - tube_compose(tube_compose(h, g), f)).max_abs())

# the tube algebra: structure constants of End_TC(1 + tau)
ta = tube_algebra(cat)
print(f'\ntube algebra dimension {ta.dimension}; associativity residual {ta.associativity_residual():.2e}')
N = cat.fusion
blocks = [int(N[I, J].sum()) for I, J in product(range(cat.num_labels), repeat=2)]
print(f'block sizes from the fusion rules {blocks}, sum of squares {sum(b * b for b in blocks)}')
