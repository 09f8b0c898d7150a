# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Bike lock moves
#
# Both sides of the identity count matrices.  Letter matrices (two rows) give
# the sum side and 0/1 matrices with star placeholders (four rows) give the
# product side.  Sliding placeholders to the left, one column at a time,
# turns each family into matrices built from seven column types, and those
# types match up.

# %%
import time

from peterson_schubert.bikelock import (
    IdentityParams,
    bl_minus,
    bl_star,
    column_correspondence,
    enumerate_V,
    left_align,
    lhs_count,
    rhs_count,
    verify_identity,
)

# %%
p = IdentityParams(m=2, n=2, w=1, x=0, y=1, z=0)
print(lhs_count(p), rhs_count(p))

# %% [markdown]
# A letter matrix before and after its moves.

# %%
S = ("RQOSPRTR-", "CCUCCCCC-")
print(*S, sep="\n")
print()
print(*bl_minus(S), sep="\n")

# %% [markdown]
# A number matrix from the point above next to the letter matrix it is paired
# with.

# %%
V = enumerate_V(p)[0]
moved = bl_star(V)
letters = column_correspondence(moved, p)
for name, M in [("V", V), ("moved", moved), ("letters", letters), ("preimage", left_align(letters, "-"))]:
    print(name, " ".join(M))

# %% [markdown]
# A certificate runs the whole pipeline on every matrix of a point.

# %%
start = time.perf_counter()
cert = verify_identity(IdentityParams(3, 3, 5, 5, 5, 5))
print(cert.lhs, cert.bijection, f"{time.perf_counter() - start:.1f}s")
