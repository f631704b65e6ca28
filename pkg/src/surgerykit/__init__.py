"""Link surgery of S2xS2: linking parities, Alexander polynomials, intersection
forms, and the binary icosahedral group behind Scharlemann's manifolds."""

__version__ = "0.1.0"
