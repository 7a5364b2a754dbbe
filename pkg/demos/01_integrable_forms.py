# coding: utf-8

# # Integrable 1-forms, exactly
#
# A 1-form w is integrable when w ^ dw vanishes. Everything here is exact
# rational arithmetic, so "vanishes" means the polynomial coefficients are zero,
# not small.

# In[1]:

from fractions import Fraction

from intforms.algebra import MPoly
from intforms.exterior import PForm, ext_d, wedge
from intforms.formspace import FormSpace, is_integrable, iw_quadrics, rank

x0, x1, x2 = MPoly.gens(3)
dx0, dx1, dx2 = (PForm.dx(3, i) for i in range(3))


# A closed form is integrable, and so is any multiple of one.

# In[2]:

w = dx1 * (x0 + 2)
print(w, "->", is_integrable(w))


# The contact form dx2 + x0 dx1 is the standard non-example.

# In[3]:

contact = dx2 + dx1 * x0
print(wedge(contact, ext_d(contact)))
print(is_integrable(contact))


# # Linear families
#
# For a space W of forms, the integrable members of P(W) are cut out by
# quadrics: the coefficients of w_l ^ dw_l are quadratic in l.

# In[4]:

W = FormSpace([dx0, dx1, dx2 * x0])
system = iw_quadrics(W)
for k in range(len(system)):
    print(system.format(k, ["a", "b", "c"]), "= 0")
print("rank", rank(W))


# In[5]:

for lam in ([1, 0, 0], [0, 1, 1], [1, Fraction(1, 2), 0]):
    lam = [Fraction(x) for x in lam]
    print([str(x) for x in lam], is_integrable(W.member(lam)))
