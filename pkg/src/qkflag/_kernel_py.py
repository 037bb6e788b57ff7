"""Pure-Python sparse polynomial kernels.

Polynomials are plain dicts mapping exponent tuples to coefficients.  The
compiled module ``_kernel_c`` implements the same functions with the same
signatures; ``qkflag._kernel`` picks one at import time.
"""

IMPLEMENTATION = "python"


def mono_mul(a, b):
    return tuple([x + y for x, y in zip(a, b)])


def mono_div(a, b):
    """Return a / b if b divides a among nonnegative monomials, else None."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def mono_lcm(a, b):
    return tuple([x if x > y else y for x, y in zip(a, b)])


def divides(b, a):
    for x, y in zip(a, b):
        if x < y:
            return False
    return True


def find_reducer(m, lms):
    """Index of the first monomial in ``lms`` dividing ``m``, or -1."""
    for idx, lm in enumerate(lms):
        ok = True
        for x, y in zip(m, lm):
            if x < y:
                ok = False
                break
        if ok:
            return idx
    return -1


def poly_mul(p, q):
    if len(p) > len(q):
        p, q = q, p
    out = {}
    get = out.get
    for ea, ca in p.items():
        for eb, cb in q.items():
            e = tuple([x + y for x, y in zip(ea, eb)])
            c = get(e)
            if c is None:
                out[e] = ca * cb
            else:
                out[e] = c + ca * cb
    return {e: c for e, c in out.items() if c}


def addmul_inplace(p, c, shift, q):
    """p += c * x^shift * q, dropping cancelled terms.  Mutates ``p``."""
    for e, cq in q.items():
        e2 = tuple([x + y for x, y in zip(e, shift)])
        old = p.get(e2)
        if old is None:
            p[e2] = c * cq
        else:
            new = old + c * cq
            if new:
                p[e2] = new
            else:
                del p[e2]
    return p


def leading(p, key):
    """Exponent of ``p`` maximal under ``key`` (p nonempty)."""
    return max(p, key=key)
