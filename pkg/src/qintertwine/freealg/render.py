"""Text and JSON renderings of normal forms.

Text output uses the same conventions as the expression parser of the CLI
(explicit ``*`` between a coefficient and its monomial, ``z0*`` for the
adjoint letter, ``zeta``/``xi`` for the second tensor factor), so printed
elements can be parsed back.  Kernel monomials are printed in the
interleaved order ``(z*)^I zeta^I' f(x, xi) z^J (zeta*)^J'`` where the
zeta-letters multiply in the opposite algebra.
"""

from ..scalar import Scalar

__all__ = ["render", "to_json", "kernel_terms", "format_coeff"]


def format_coeff(c):
    """String for a coefficient; sums get parentheses."""
    s = str(c)
    if isinstance(c, Scalar):
        if c.needs_parens() or not c.is_laurent():
            s = f"({s})"
    return s


def _pow(name, e):
    return name if e == 1 else f"{name}^{e}"


def _letters_C(I, J, prefix):
    left = [_pow(f"{prefix}{k}*", e) for k, e in enumerate(I) if e]
    right = [_pow(f"{prefix}{k}", e) for k, e in enumerate(J) if e]
    return left, right


def _var_names(alg):
    from .engine import CAlgebra
    from .element import KernelAlgebra
    if isinstance(alg, CAlgebra):
        return [f"x{j}" for j in range(alg.nvars)]
    if isinstance(alg, KernelAlgebra):
        names = []
        if isinstance(alg.left, CAlgebra):
            names += [f"x{j}" for j in range(alg.left.nvars)]
        names += [f"xi{j}" for j in range(alg.right.nvars)]
        return names
    return []


def _middle_factors(alpha, tag, names):
    out = [_pow(nm, e) for nm, e in zip(names, alpha) if e]
    if tag is not None:
        out.append(f"G[{tag[0]}]{list(tag[1])}" if any(tag[1]) else f"G[{tag[0]}]")
    return out


def _op_sign(A, B):
    """Exponent of q converting an R-normal monomial (z*)^A g z^B to the
    opposite-order monomial zeta^B g (zeta*)^A."""
    sa = sum(A[i] * A[j] for i in range(len(A)) for j in range(i + 1, len(A)))
    sb = sum(B[i] * B[j] for i in range(len(B)) for j in range(i + 1, len(B)))
    return -sa + sb


def kernel_terms(elem):
    """Terms of a kernel element in (2.9)-style op order.

    Yields ``(I, J, Iprime, Jprime, alpha, tag, coeff)`` where Iprime are the
    exponents of unstarred zeta letters and Jprime those of starred ones.
    """
    alg = elem.alg
    field = alg.field
    for (kL, kR), mid in sorted(elem.terms.items(), key=lambda kv: _sort_key(kv[0])):
        A, B = kR
        conv = field.spow(2 * _op_sign(A, B))
        for (alpha, tag), c in sorted(mid.terms.items(), key=lambda kv: _sort_key(kv[0])):
            yield kL, B, A, alpha, tag, c * conv


def _flat(obj):
    if isinstance(obj, tuple):
        out = []
        for o in obj:
            out.extend(_flat(o))
        return out
    if obj is None:
        return []
    if isinstance(obj, int):
        return [obj]
    return [hash(obj) % 1000003]


def _sort_key(obj):
    """Deterministic order: lower total degree first, then lexicographically
    larger exponent vectors first (so x1 precedes x2)."""
    flat = _flat(obj)
    return (sum(v for v in flat if isinstance(v, int)), [-v for v in flat])


def _join(pieces):
    text = ""
    for i, (neg, body) in enumerate(pieces):
        if i == 0:
            text = ("-" + body) if neg else body
        else:
            text += (" - " if neg else " + ") + body
    return text or "0"


def _term_text(c, letters):
    body = " ".join(letters)
    neg = False
    if isinstance(c, Scalar) and c.is_laurent():
        cs = str(c)
        if not c.needs_parens() and cs.startswith("-"):
            neg = True
            c = -c
    elif not isinstance(c, Scalar):
        try:
            if c < 0:
                neg, c = True, -c
        except TypeError:
            pass
    if not letters:
        return neg, format_coeff(c)
    if c == 1:
        return neg, body
    return neg, f"{format_coeff(c)} * {body}"


def render(elem):
    from .engine import CAlgebra
    from .element import KernelAlgebra
    alg = elem.alg
    names = _var_names(alg)
    pieces = []
    if isinstance(alg, KernelAlgebra) and isinstance(alg.right, CAlgebra):
        for kL, Ip, Jp, alpha, tag, c in kernel_terms(elem):
            left = right = []
            if isinstance(alg.left, CAlgebra):
                left, right = _letters_C(kL[0], kL[1], "z")
            else:
                left, right = alg.left.word_letters(kL), []
            zeta = [_pow(f"zeta{k}", e) for k, e in enumerate(Ip) if e]
            zetas = [_pow(f"zeta{k}*", e) for k, e in enumerate(Jp) if e]
            mids = _middle_factors(alpha, tag, names)
            pieces.append(_term_text(c, left + zeta + mids + right + zetas))
        return _join(pieces)
    for key, mid in sorted(elem.terms.items(), key=lambda kv: _sort_key(kv[0])):
        if isinstance(alg, CAlgebra):
            left, right = _letters_C(key[0], key[1], "z")
        else:
            left, right = alg.word_letters(key), []
        for (alpha, tag), c in sorted(mid.terms.items(), key=lambda kv: _sort_key(kv[0])):
            pieces.append(_term_text(c, left + _middle_factors(alpha, tag, names) + right))
    return _join(pieces)


def to_json(elem):
    """``{"terms": [{I, J, Iprime, Jprime, x, xi, coeff}]}`` (schema version 1)."""
    from .engine import CAlgebra
    from .element import KernelAlgebra
    alg = elem.alg
    terms = []
    if isinstance(alg, KernelAlgebra):
        nL = alg.nL
        for kL, Ip, Jp, alpha, tag, c in kernel_terms(elem):
            I, J = (list(kL[0]), list(kL[1])) if isinstance(alg.left, CAlgebra) else (kL, [])
            terms.append({"I": I, "J": J, "Iprime": list(Ip), "Jprime": list(Jp),
                          "x": list(alpha[:nL]), "xi": list(alpha[nL:]),
                          "coeff": str(c)})
    else:
        for key, mid in sorted(elem.terms.items(), key=lambda kv: _sort_key(kv[0])):
            for (alpha, tag), c in sorted(mid.terms.items(), key=lambda kv: _sort_key(kv[0])):
                terms.append({"I": list(key[0]), "J": list(key[1]), "Iprime": [], "Jprime": [],
                              "x": list(alpha), "xi": [], "coeff": str(c)})
    return {"schema": 1, "terms": terms}
