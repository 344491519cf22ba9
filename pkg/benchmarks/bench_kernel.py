"""Compare the compiled and pure-Python term-arithmetic kernels.

Runs the same workload against both backends: repeated squaring of a
dense multivariate polynomial in the raw dict-of-monomials form the
kernels operate on.
"""

import time
from fractions import Fraction

from ckexpand import _kernel_py

try:
    from ckexpand import _kernel_c
except ImportError:
    _kernel_c = None


def build_operand(nvars=4, width=3):
    """A polynomial like (1 + x0 + 2*x1 + ... )^width in kernel form."""
    terms = {(): Fraction(1)}
    for i in range(nvars):
        terms[((f"x{i}", 1),)] = Fraction(i + 1)
    kernel = _kernel_c or _kernel_py
    out = dict(terms)
    for _ in range(width - 1):
        out = _kernel_py.terms_mul(out, terms)
    return out


def workload(kernel, operand, rounds):
    acc = {(): Fraction(1)}
    for _ in range(rounds):
        acc = kernel.terms_mul(acc, operand)
        acc = kernel.terms_add(acc, operand)
    return acc


def run(kernel, operand, rounds=6, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = workload(kernel, operand, rounds)
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    operand = build_operand()
    timings = {}
    reference = None
    for kernel in filter(None, [_kernel_py, _kernel_c]):
        elapsed, result = run(kernel, operand)
        timings[kernel.IMPLEMENTATION] = elapsed
        if reference is None:
            reference = result
        elif result != reference:
            raise AssertionError("kernels disagree on the workload result")
        print(f"{kernel.IMPLEMENTATION:>8}: {elapsed * 1000:8.2f} ms "
              f"({len(result)} terms)")
    if _kernel_c is None:
        print("compiled kernel unavailable; built pure-Python only")
    elif timings["python"] and timings["cython"]:
        print(f"speedup: {timings['python'] / timings['cython']:.2f}x")


if __name__ == "__main__":
    main()
