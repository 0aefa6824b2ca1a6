#!/usr/bin/env python3
"""Generate the Schnorr-group parameter sets embedded in core/src/group.cpp.

q is prime, p = k*q + 1 is prime, g = h^((p-1)/q) generates the order-q
subgroup of Z_p^*. Deterministic given the label, so the embedded constants
can be regenerated and audited: run this script and diff its output against
the hex strings in group.cpp.
"""
import random

import gmpy2


def gen(label, pbits, qbits):
    rng = random.Random(label)
    # subgroup order q: fix the top bit (exact width) and the low bit (odd)
    cand = rng.getrandbits(qbits) | (1 << (qbits - 1)) | 1
    q = int(gmpy2.next_prime(cand))
    assert q.bit_length() == qbits
    # modulus p = k*q + 1 with even k (keeps p odd) and exact width
    while True:
        k = rng.getrandbits(pbits - qbits)
        k |= 1 << (pbits - qbits - 1)
        k &= ~1
        p = k * q + 1
        if p.bit_length() != pbits:
            continue
        if gmpy2.is_prime(p, 64):
            break
    # smallest h whose cofactor power is a nontrivial subgroup element
    h = 2
    while True:
        g = pow(h, (p - 1) // q, p)
        if g != 1:
            break
        h += 1
    assert pow(g, q, p) == 1 and g != 1
    assert (p - 1) % q == 0
    assert gmpy2.is_prime(p, 64) and gmpy2.is_prime(q, 64)
    return p, q, g


if __name__ == "__main__":
    for name, pb, qb in [("toy", 1024, 160), ("secure", 2048, 224)]:
        p, q, g = gen(f"lpp-params-{name}", pb, qb)
        print(f"# {name}: |p|={p.bit_length()} |q|={q.bit_length()}")
        print(f'{name}_p = "{p:x}"')
        print(f'{name}_q = "{q:x}"')
        print(f'{name}_g = "{g:x}"')
