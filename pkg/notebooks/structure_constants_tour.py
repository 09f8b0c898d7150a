# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Multiplying Peterson Schubert classes
#
# Classes are indexed by subsets of {1, ..., n-1}.  Every product
# p_A p_B expands with coefficients of the form c * t^d, and those
# coefficients are what this package computes.

# %%
from peterson_schubert import b_general, decompose, expand_product, localize_product, restrict

# %% [markdown]
# Subsets break into maximal runs of consecutive integers.  Most of the
# combinatorics happens one run at a time.

# %%
decompose({1, 2, 4, 5, 7})

# %% [markdown]
# Restricting a class to a fixed point w_C gives a single monomial.  It
# vanishes unless A sits inside C.

# %%
for A, C in [({2, 3}, range(1, 7)), ({1, 4}, {1, 2, 4, 5}), ({1, 3}, {1, 2})]:
    print(sorted(A), "at", sorted(C), "->", restrict(A, C))

# %% [markdown]
# One structure constant, then the full expansion of a product.

# %%
print(b_general({1, 2}, {2, 3, 4}, {1, 2, 3, 4}))
for C, v in expand_product({1, 2, 4, 5}, {2, 3, 4}, 7).items():
    print(f"{str(C):>14}  {v}")

# %% [markdown]
# The same table comes out of brute-force localization, which never looks at
# the closed forms: it solves for the coefficients fixed point by fixed point.

# %%
assert localize_product({1, 2, 4, 5}, {2, 3, 4}, 7) == expand_product({1, 2, 4, 5}, {2, 3, 4}, 7)
