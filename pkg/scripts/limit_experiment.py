#!/usr/bin/env python3
"""Drive the wp-adic limit construction: pick a weight character, walk the
sequence h_n = f * g^(j_n), and report weights and successive congruence
depths."""

import argparse
import sys

from drinfeld.fields import fq, parse_apoly, polyring
from drinfeld.forms import (WeightChar, coefficient_monomial, congruence_depth,
                            hasse_lift_expansion, padic_limit_sequence)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--q", type=int, default=2)
    parser.add_argument("--wp", default="t")
    parser.add_argument("--prec", type=int, default=16)
    parser.add_argument("--steps", type=int, default=4)
    parser.add_argument("--alpha", type=int, default=2)
    parser.add_argument("--beta", type=int, default=1)
    parser.add_argument("--s1-offset", type=int, default=None,
                        help="p-adic target s1 = weight + offset (default q)")
    args = parser.parse_args(argv)

    field = fq(args.q)
    A = polyring(field)
    wp = parse_apoly(A, args.wp)
    d = wp.degree
    g = hasse_lift_expansion(field, wp, args.prec)
    f = coefficient_monomial(field, wp, args.prec, args.alpha, args.beta)
    offset = args.q if args.s1_offset is None else args.s1_offset
    qd1 = field.q ** d - 1
    chi = WeightChar(f.weight % max(1, qd1), f.weight + offset, qd1,
                     field.p, 12)
    print("f = a1^%d a2^%d, weight %d; chi = (%d, %d)"
          % (args.alpha, args.beta, f.weight, chi.s0, chi.s1))
    seq = padic_limit_sequence(f, chi, wp, args.steps, g)
    prev = None
    for n, (k, h) in enumerate(seq, start=1):
        line = "h_%d: weight %d" % (n, k)
        if prev is not None:
            res = congruence_depth(h, prev, wp, n)
            line += ", depth(h_%d, h_%d) = %d (need >= %d)" % (n, n - 1,
                                                               res.depth, n - 1)
        print(line)
        prev = h
    return 0


if __name__ == "__main__":
    sys.exit(main())
