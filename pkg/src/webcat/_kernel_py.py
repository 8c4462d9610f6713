"""Pure-Python hot loops for pushing monomials through a stack of generator layers.

A layer is ``(table, offset, width, odd)``: ``table`` maps a tuple of ``width``
slots to a tuple of ``(image slots, coefficient)`` pairs, and the generator sits
after ``offset`` slots.  Odd generators pick up a sign from the parity of the
slots to their left.
"""

BACKEND = "python"


def prefix_parity(mono, offset):
    p = 0
    for s in range(offset):
        for i in mono[s]:
            if i < 0:
                p ^= 1
    return p


def apply_layer(vec, table, offset, width, odd):
    out = {}
    end = offset + width
    for mono, c in vec.items():
        col = table.get(mono[offset:end])
        if col is None:
            continue
        if odd and prefix_parity(mono, offset):
            c = -c
        left = mono[:offset]
        right = mono[end:]
        for img, d in col:
            key = left + img + right
            out[key] = out.get(key, 0) + c * d
    return {k: v for k, v in out.items() if v}


def push_columns(basis, layers):
    """Images of every basis monomial under the composite of ``layers`` (bottom first)."""
    cols = {}
    for mono in basis:
        vec = {mono: 1}
        for table, offset, width, odd in layers:
            vec = apply_layer(vec, table, offset, width, odd)
            if not vec:
                break
        if vec:
            cols[mono] = vec
    return cols
