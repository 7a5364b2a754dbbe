# coding: utf-8

# # Logarithmic pencil components: degree against codimension
#
# For pencils of degree d hypersurfaces in P^n the component R_n(d,d) has a
# codimension that grows polynomially in d, while its degree is a Catalan
# number and grows much faster.

# In[1]:

from fractions import Fraction

from intforms.formspace import rn_dd_stats

for d in range(1, 6):
    st = rn_dd_stats(3, d)
    ratio = Fraction(st.degree, st.codimension)
    print(f"d={d}  codim={st.codimension:>4}  degree={st.degree}  ratio~{float(ratio):.3g}")


# In[2]:

for n in (3, 4, 5):
    print(n, [rn_dd_stats(n, d).codimension for d in (1, 2, 3)])
