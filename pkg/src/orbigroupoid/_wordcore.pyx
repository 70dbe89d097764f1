# cython: language_level=3, boundscheck=False
"""Compiled word kernel: free reduction of dart words.

Same contract as ``_wordcore_py``. The fast paths take the involution as a
C-contiguous int buffer (graphs cache one as ``array('i')``); any other
indexable falls back to a generic loop that is still compiled.
"""

BACKEND = "cython"


def reduce_word(word, invol):
    cdef const int[::1] iv
    try:
        iv = invol
    except (TypeError, ValueError):
        return _reduce_generic(word, invol)
    return _reduce_typed(word, iv)


def concat_reduce(a, b, invol):
    cdef const int[::1] iv
    try:
        iv = invol
    except (TypeError, ValueError):
        return _concat_generic(a, b, invol)
    return _concat_typed(list(a), b, iv)


def is_reduced(word, invol):
    cdef const int[::1] iv
    cdef Py_ssize_t i, n
    cdef int prev, cur
    try:
        iv = invol
    except (TypeError, ValueError):
        return all(invol[word[i]] != word[i + 1] for i in range(len(word) - 1))
    n = len(word)
    if n < 2:
        return True
    prev = word[0]
    for i in range(1, n):
        cur = word[i]
        if iv[prev] == cur:
            return False
        prev = cur
    return True


cdef _reduce_typed(word, const int[::1] iv):
    return _concat_typed([], word, iv)


cdef _concat_typed(list out, b, const int[::1] iv):
    cdef Py_ssize_t n = len(out)
    cdef int d, top
    for d in b:
        if n > 0:
            top = out[n - 1]
            if iv[top] == d:
                del out[n - 1]
                n -= 1
                continue
        out.append(d)
        n += 1
    return tuple(out)


def _reduce_generic(word, invol):
    out = []
    for d in word:
        if out and invol[out[-1]] == d:
            out.pop()
        else:
            out.append(d)
    return tuple(out)


def _concat_generic(a, b, invol):
    out = list(a)
    for d in b:
        if out and invol[out[-1]] == d:
            out.pop()
        else:
            out.append(d)
    return tuple(out)
