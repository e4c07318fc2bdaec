from flatlab.modules.presented_module import PresentedModule
from flatlab.modules.tower import AffineAlgebra


def cyclic(algebra: AffineAlgebra, *generators, name="") -> PresentedModule:
    """A/(generators) for polynomials of the ambient ring of `algebra`."""
    return PresentedModule.cyclic(algebra, generators, name)


def random_poly(ring, rng, terms=3, degree=2):
    """A polynomial with at most `terms` terms of total degree at most `degree`."""
    result = {}
    for _ in range(terms):
        exponents = [0] * ring.nvars
        for _ in range(rng.randint(0, degree)):
            exponents[rng.randrange(ring.nvars)] += 1
        result[tuple(exponents)] = rng.choice([-3, -2, -1, 1, 2, 3])
    return ring.from_terms(result)


def random_polys(ring, rng, count, **kwargs):
    """`count` nonzero random polynomials."""
    polys = []
    while len(polys) < count:
        poly = random_poly(ring, rng, **kwargs)
        if poly:
            polys.append(poly)
    return polys
