"""Equivariant sheaf models of torus-equivariant elliptic cohomology."""
