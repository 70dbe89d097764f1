"""Pure-Python twin of the compiled word kernel.

A word is a sequence of dart indices; ``invol`` maps each dart to its reverse.
Free reduction deletes adjacent (d, invol[d]) pairs; the stack algorithm below
computes the (unique, order-independent) reduced form in one pass.
"""

BACKEND = "pure-python"


def reduce_word(word, invol):
    out = []
    for d in word:
        if out and invol[out[-1]] == d:
            out.pop()
        else:
            out.append(d)
    return tuple(out)


def concat_reduce(a, b, invol):
    """Reduced form of a+b, assuming a and b are already reduced."""
    out = list(a)
    for d in b:
        if out and invol[out[-1]] == d:
            out.pop()
        else:
            out.append(d)
    return tuple(out)


def is_reduced(word, invol):
    return all(invol[word[i]] != word[i + 1] for i in range(len(word) - 1))
