# coding: utf-8

# # Left-invariant forms on sl(2)
#
# On a Lie algebra the exterior derivative of a constant covector is
# determined by the structure constants, with d(xi)(u, v) = -xi([u, v]).

# In[1]:

from intforms.lie import ConstForm, coalgebra_d, heisenberg, is_integrable_covector, lie_iw, sl2

L = sl2()
a, b, c = (ConstForm.basis(3, k) for k in range(3))
for name, form in zip("abc", (a, b, c)):
    print(f"d{name} =", coalgebra_d(L, form))


# The integrable covectors form a single smooth conic.

# In[2]:

conic = lie_iw(L)
print(len(conic), "quadric:", conic.format(0, ["x", "y", "z"]), "= 0")


# In[3]:

for lam in ([1, 0, 0], [1, 2, 2], [2, 2, 1], [1, 1, 1]):
    print(lam, is_integrable_covector(L, lam))


# The Heisenberg algebra gives a double line instead.

# In[4]:

print(lie_iw(heisenberg()).format(0, ["x", "y", "z"]), "= 0")
