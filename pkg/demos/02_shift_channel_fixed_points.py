"""The truncated shift channel has no fixed points.

The channel mixes the left and right shifts on square-summable
sequences.  A formal diagonal fixed point exists but its entries grow
like f^(i)(p)/p^(i-1) > 1, so it is not trace class; numerically the
truncated channel's fixed space is empty.  The growth of the formal
solution is reproduced here from the exact coefficient recursion.
"""

from fractions import Fraction

from ergochan import (
    f_recursion,
    f_recursion_exact,
    fixed_space,
    shift_channel,
    superoperator,
    verify,
)

p, d = 0.5, 16
ch = shift_channel(p, d)
print(f"channel: {ch.label}")
print("verification:", verify(ch))

fs = fixed_space(superoperator(ch), tol=1e-8)
print(f"\nfixed-space dimension at truncation {d}: {fs.dimension} (empty)")

print("\nformal fixed-point entries x_i / x_1 = f^(i)(p) / p^(i-1):")
for i in range(1, 11):
    ratio = f_recursion(i, p) / p ** (i - 1)
    print(f"  i={i:2d}: {ratio:.6f}")

print("\ntelescoping identity, exact rationals (should be exactly 0):")
q = Fraction("0.5")
for i in (2, 10, 20):
    lhs = f_recursion_exact(i + 1, q) / q**i - f_recursion_exact(i, q) / q ** (i - 1)
    rhs = ((1 - q) / q) ** i
    print(f"  i={i:2d}: lhs - rhs = {lhs - rhs}")
