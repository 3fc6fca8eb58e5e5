"""cychom: exact cyclic and Hochschild homology of finite groupoid algebras,
paracyclic module construction from transposition data, and the Galois
comparison route, all over exact rational arithmetic."""

__version__ = "0.1.0"
