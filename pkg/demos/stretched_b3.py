"""The stretched tensor coefficient t -> c(t lam, t mu, t nu) for B3.

For lam, mu, nu = (0,15,5), (12,15,3), (6,15,6) in fundamental coordinates the
answer is a quasipolynomial of degree 5 whose coefficients depend on the
parity of t.  We print both constituents and check them against direct
evaluation for a few values of t.
"""

from kostant import RootSystem, from_funda_to_cano, tensor_coefficient, tensor_stretched

rs = RootSystem("B", 3)
lam, mu, nu = (from_funda_to_cano(rs, w) for w in [(0, 15, 5), (12, 15, 3), (6, 15, 6)])

q = tensor_stretched(rs, lam, mu, nu, "t")
print("c(t) =", q)
print()
form, pairs = q.parity_pairs()
print("degree   even t        odd t")
for e in sorted(pairs):
    even, odd = pairs[e]
    print(f"  t^{e[0]}   {str(even):>12}  {str(odd):>12}")

print()
for t in range(3):
    direct = tensor_coefficient(rs, *[[t * x for x in w] for w in (lam, mu, nu)])
    print(f"t={t}: quasipolynomial {q.evaluate([t])}, direct {direct}")
