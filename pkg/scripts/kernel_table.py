"""Print the pair kernel and the rho kernel for each model, and check the factor identity.

    python3 scripts/kernel_table.py --max-degree 2
"""
import argparse

from surface_shuffle.lambda_ops import parse_model, rho_factor, rho_kernel, zeta
from surface_shuffle.ring import RatFunc, render, rf_eq, z


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--models", nargs="+", default=["affine", "surface:rW=1", "surface:rW=2"])
    p.add_argument("--max-degree", type=int, default=2)
    a = p.parse_args()
    ok = True
    for name in a.models:
        model = parse_model(name)
        print(f"== {name}")
        print(f"zeta(1,2) = {render(zeta(model, 1, 2))}")
        print(f"rho(1,1)  = {render(rho_kernel(1, 1, model))}")
        for n in range(1, a.max_degree + 1):
            for m in range(1, a.max_degree + 1):
                good = all(rf_eq(rho_factor(model, i, j),
                                 zeta(model, i, j) * (1 - RatFunc.of(z(i)) / RatFunc.of(z(j))))
                           for i in range(1, n + 1) for j in range(n + 1, n + m + 1))
                ok &= good
                print(f"  factor identity n={n} m={m}: {'ok' if good else 'MISMATCH'}")
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
