"""Interpreted sparse-polynomial kernel (fallback for the compiled one)."""


def mul_dicts(a_terms, b_terms, nvars, add_table, mul_table, q):
    """Product of two term dicts {exponent tuple: coefficient code}.

    The tables are flat q*q lookup arrays; zero-coefficient results are
    purged so the output satisfies the sparse invariant.
    """
    if not a_terms or not b_terms:
        return {}
    if len(a_terms) < len(b_terms):
        a_terms, b_terms = b_terms, a_terms
    out = {}
    get = out.get
    b_items = list(b_terms.items())
    for ea, ca in a_terms.items():
        row = ca * q
        for eb, cb in b_items:
            c = mul_table[row + cb]
            key = tuple(map(int.__add__, ea, eb))
            prev = get(key)
            if prev is None:
                out[key] = c
            else:
                s = add_table[prev * q + c]
                if s:
                    out[key] = s
                else:
                    del out[key]
    return out
