"""Band edges of solvable periodic Schroedinger potentials."""
