# coding: utf-8

# # A family whose integrable classes contain a rational normal curve
#
# In C^(n+1) take w_0 = dx_0 and w_j = ((j+1) + j*(x_0 + ... + x_n)) dx_j.
# These n+1 forms and two linear combinations of them are integrable, giving
# n+3 points of P^n in general position. Through them passes a unique
# rational normal curve, and every point on it is again an integrable class.

# In[1]:

import time

from intforms.fixtures import rnc_family
from intforms.formspace import curve_in_iw, curve_is_rnc, is_integrable
from intforms.steiner import PointsPW, steiner_rnc

n = 3
fam = rnc_family(n)
for k, w in enumerate(fam.forms):
    print(f"w{k} integrable:", is_integrable(w))
print("sum (i+1) w_i integrable:", is_integrable(fam.witness))


# The n+3 classes, in coordinates of the basis w_0..w_n.

# In[2]:

P = PointsPW([fam.space.coordinates(w) for w in fam.forms])
for k in range(1, n + 4):
    print(k, [str(x) for x in P[k]])


# Intersecting n pencils of hyperplanes traces the curve.

# In[3]:

start = time.perf_counter()
curve = steiner_rnc(P)
print(curve)
print(curve_is_rnc(curve))
print("contained in the integrable locus:", curve_in_iw(fam.space, curve))
print(f"{(time.perf_counter() - start) * 1000:.1f} ms")


# Spot check: a random point of the curve is an integrable form.

# In[4]:

w = fam.space.member(curve(3, -7))
print(is_integrable(w))
