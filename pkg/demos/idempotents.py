"""Primitive idempotents and matrix units of tube endomorphism algebras.

Run with ``python3 demos/idempotents.py``.
"""
from __future__ import annotations

import numpy as np

from tubecat import block_decompose_end, builtin_category, lambda_map, tube_compose
from tubecat.homspace import Morphism, compose, trace
from tubecat.reps import trace_dual_bases, verify_opposite

np.set_printoptions(precision=4, suppress=True)

for name in ['fibonacci', 'ising']:
    cat = builtin_category(name)
    print(f'== {name}')
    u = cat.unit
    # the vacuum idempotent: lambda(id (x) id) for I = J = 1
    i = Morphism(cat, (), (u, u), {u: np.ones((1, 1))})
    j = Morphism(cat, (u, u), (), {u: np.ones((1, 1))})
    p = lambda_map(cat, u, u, j, i)
    comps = {cat.labels[R]: complex(p.component(R).scalar()).real for R in range(cat.num_labels)}
    print('vacuum idempotent components', comps)
    print('expected d(R)/d(C)          ', {L: float(v) for L, v in zip(cat.labels, (cat.qdim / cat.global_dim).real)})
    print('p o p - p                   ', (tube_compose(p, p) - p).max_abs())

    for X in ['', cat.labels[1], f'{cat.labels[1]},{cat.labels[1]}']:
        bd = block_decompose_end(cat, X)
        sizes = {f'{cat.labels[I]},{cat.labels[J]}': n for (I, J), n in bd.block_sizes.items()}
        worst = max(bd.residuals.values())
        print(f'End_TC([{X}]): blocks {sizes}; worst residual {worst:.1e}')

# lambda and mu are opposite under the trace pairing
cat = builtin_category('fibonacci')
tau = cat.index('tau')
b, c = trace_dual_bases(cat, 'tau,tau', tau, tau)
print('\ntr(c_q o b_p) =\n', np.array([[trace(compose(cq, bp)) for bp in b] for cq in c]).real)
for p, q in [(0, 0), (1, 0)]:
    res = verify_opposite(cat, tau, tau, 'tau,tau', c[q], b[p])
    print(f'k = c_{q}, j = b_{p}: mu(k (x) lambda(j (x) -)) = {res.scalar.real:+.3f} id, '
          f'tr(j o k) = {res.expected.real:+.3f}, residual {res.residual:.1e}')
