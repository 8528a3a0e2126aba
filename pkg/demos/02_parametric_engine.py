"""
Deciding a two-parameter congruence exactly
===========================================

A congruence modulo (1 - a q^5)(a - q^5) is checked by substituting the root
a = q^{-5} (or a = q^5) exactly, which leaves a rational function of b and q.
It vanishes identically iff it vanishes at more rational b values than its
b-degree, and the engine draws exactly that many points.
"""

import itertools

from qcong.congruence import (ModFactor, Modulus, ParamRoot, degree_bound, negate,
                              parametric_congruent_zero, point_stream)
from qcong.cli import format_verdict
from qcong.qfactor import cf_mul, const, one_minus
from qcong.qseries import B, Q, single_closed_form_plus, term_plus

n = 5
terms = [term_plus(k, parametric=True) for k in range(2)]
difference = terms + negate([single_closed_form_plus(n, B)])

# a has prime points at even positions of the prime sequence, b at odd ones
print("a points:", list(itertools.islice(point_stream("a"), 6)))
print("b points:", list(itertools.islice(point_stream("b"), 6)))
print("b-degree bound of the difference:", degree_bound(difference, "b"))

roots = Modulus.of(ModFactor("atom", ParamRoot("a", -n)), ModFactor("atom", ParamRoot("a", n)))
print(format_verdict(parametric_congruent_zero(difference, roots, "demo", {"n": n})))

# a small perturbation in b is caught at the first point
bad = difference + [cf_mul(const(1), one_minus(B * Q(1)))]
print(format_verdict(parametric_congruent_zero(bad, roots, "demo", {"n": n, "perturbed": True})))
