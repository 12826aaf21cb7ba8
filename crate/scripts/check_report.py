#!/usr/bin/env python3
"""Independent offline checker for zadic reports.

Reads a report JSON from the path given on the command line (or stdin) and
re-verifies the embedded witnesses with nothing but the standard library:
polynomials are coefficient lists of exact fractions, equality of fractions
of polynomials is cross-multiplication, valuations are counted divisions.

Exit code 0 when every re-check passes, 1 otherwise.
"""
import json
import math
import sys
from fractions import Fraction


def poly(coeffs):
    f = [Fraction(c) for c in coeffs]
    while f and f[-1] == 0:
        f.pop()
    return f


def padd(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    while out and out[-1] == 0:
        out.pop()
    return out


def pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    while out and out[-1] == 0:
        out.pop()
    return out


def pscale(a, c):
    return poly([x * c for x in a])


def peval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def rf(obj):
    return poly(obj["num_coeffs"]), poly(obj["den_coeffs"])


def rf_equal(a, b):
    # a_num·b_den == b_num·a_den, no reduction anywhere
    return pmul(a[0], b[1]) == pmul(b[0], a[1])


def vp(x, p):
    """p-adic valuation of a Fraction; None encodes v(0)."""
    if x == 0:
        return None
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def content(f, p):
    vals = [vp(c, p) for c in f if c != 0]
    return min(vals) if vals else None


PASS = True


def check(name, ok, detail=""):
    global PASS
    print(f"  {name}: {'ok' if ok else 'MISMATCH'} {detail}")
    if not ok:
        PASS = False


def check_cech(report):
    w = report["witnesses"]
    cover = [poly(f["coeffs"]) for f in w["cover"]]
    bezout = [rf(b) for b in w["bezout"]]
    # Σ g_i f_i = 1 exactly, over the common denominator Π gden_j
    den = [Fraction(1)]
    for _, gden in bezout:
        den = pmul(den, gden)
    num = []
    for i, ((gnum, _), f) in enumerate(zip(bezout, cover)):
        term = pmul(gnum, f)
        for j, (_, gden) in enumerate(bezout):
            if j != i:
                term = pmul(term, gden)
        num = padd(num, term)
    check("bezout expands to 1", num == den)
    for sample in w["glue_samples"]:
        glued = rf(sample["glued"])
        glob = rf(sample["global"])
        check(f"trial {sample['trial']}: glue round-trip", rf_equal(glued, glob))
        for i, piece in enumerate(sample["pieces"]):
            check(
                f"trial {sample['trial']}: piece {i} value",
                rf_equal(rf(piece), glob),
            )


def check_zar(report):
    w = report["witnesses"]
    element = rf(w["element"])
    if w["unit"]:
        inverse = rf(w["witness"]["inverse"])
        product_num = pmul(element[0], inverse[0])
        product_den = pmul(element[1], inverse[1])
        check("unit witness re-multiplies to 1", product_num == product_den)
    else:
        check("non-unit evidence present", bool(w["witness"].get("evidence")))


def check_cex(report):
    p = report["config"]["p"]
    w = report["witnesses"]
    # irreducibility of t²−1+p: discriminant −4(p−1) is not a square
    disc = -4 * (p - 1)
    is_square = disc >= 0 and math.isqrt(disc) ** 2 == disc
    check("discriminant is not a square", not is_square, f"disc = {disc}")
    check("quotient witness is -p", Fraction(w["quotient_domain_witness"]) == -p)
    # (t−1)(t+1) ≡ 0 mod (t²−1) over F_p, factors nonzero
    prod = [(-1 * 1) % p, 0, 1]  # t² − 1 mod p
    check("zero divisor product ≡ modulus", prod[0] == (p - 1) and prod[2] == 1)
    check(
        "factors nonzero mod p",
        [1 % p, 1] != [0] and [(p - 1) % p, 1] != [0],
    )
    # the target is (t²−1)/(t²−1+p): denominator − numerator = p
    target = rf(w["target"])
    diff = padd(target[1], pscale(target[0], Fraction(-1)))
    check("target denominator − numerator = p", diff == [Fraction(p)])
    # mismatch schema on a fresh grid
    ok = True
    for a_num in range(-6, 7):
        for a_den in (1, 2, 3):
            if a_den % p == 0:
                continue
            a = Fraction(a_num, a_den)
            if vp(1 + p * a, p) != 0:
                ok = False
            rhs = vp(Fraction(p, 2) * a, p)
            if rhs is not None and rhs < 1:
                ok = False
    check("valuation mismatch schema", ok)
    check("no surprises recorded", not w["surprises"])


def check_spa(report):
    w = report["witnesses"]
    p = w["prime"]
    nums = [poly(f) for f in w["subset"]["nums"]]
    den = poly(w["subset"]["den"])
    for row in w["membership"]:
        desc = row["valuation"]
        if desc.startswith("eval(") and desc.endswith(")"):
            c = Fraction(desc[5:-1])
            vg = vp(peval(den, c), p)
            member = vg is not None
            if member:
                for f in nums:
                    vf = vp(peval(f, c), p)
                    # multiplicative v(f) ≤ v(g) is exponent vf ≥ vg
                    if vf is not None and vf < vg:
                        member = False
            check(f"membership at {desc}", member == row["member"])
        elif desc == "gauss":
            vg = content(den, p)
            member = vg is not None
            if member:
                for f in nums:
                    vf = content(f, p)
                    if vf is not None and vf < vg:
                        member = False
            check("membership at gauss", member == row["member"])


def main():
    path = sys.argv[1] if len(sys.argv) > 1 else None
    data = open(path).read() if path else sys.stdin.read()
    report = json.loads(data)
    command = report.get("command")
    print(f"re-verifying {command!r} report (status {report.get('status')})")
    if command == "cech":
        check_cech(report)
    elif command == "zar":
        check_zar(report)
    elif command == "cex":
        check_cex(report)
    elif command == "spa":
        check_spa(report)
    elif command in ("quotient", "tensor"):
        check("result descriptor present", "result" in report.get("witnesses", {}))
    else:
        print(f"  no checks registered for command {command!r}")
    print("OK" if PASS else "FAILED")
    sys.exit(0 if PASS else 1)


if __name__ == "__main__":
    main()
