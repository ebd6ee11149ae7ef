"""Decision procedures for convex and L-convex embeddability of countable
linear order terms, with the ordinal arithmetic and reductions they rely on."""

__version__ = "0.1.0"
