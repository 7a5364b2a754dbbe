# coding: utf-8

# # Finite Godbillon-Vey sequences
#
# A sequence (w_0, ..., w_k) is accepted when dz + sum z^i/i! w_i is integrable
# in one more variable. Every specialization z = c is then an integrable form
# in span(w_0, ..., w_k), and c -> [sum c^i/i! w_i] is a rational curve.

# In[1]:

from intforms.formspace import FormSpace, curve_in_iw, is_integrable
from intforms.gv import (
    develop,
    gv_curve,
    high_order_sequences,
    high_wedge_obstruction,
    is_gv_sequence,
    member,
    projective_sequence,
    span_rank,
)

seq = projective_sequence()
print(develop(seq))
print(is_gv_sequence(seq))


# In[2]:

curve = gv_curve(seq)
print(curve, curve_in_iw(FormSpace(seq.forms), curve))
print(all(is_integrable(member(seq, c)) for c in range(-5, 6)))


# Longer genuine sequences have w_i ^ w_j = 0 for i, j >= 2 and span a
# space of rank at most 3.

# In[3]:

for s in high_order_sequences():
    print(s.i0, is_gv_sequence(s), high_wedge_obstruction(s), span_rank(s))
