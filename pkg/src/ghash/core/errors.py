from __future__ import annotations


class GraphHashError(Exception):
    """Root of every domain error raised by ghash.

    Concrete errors also subclass a builtin (ValueError / RuntimeError) so callers
    that only know the builtin still catch them.
    """
