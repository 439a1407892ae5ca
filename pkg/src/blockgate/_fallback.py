"""Pure numpy versions of the construction kernels.

Same signatures and results as the compiled ``_kernels`` extension.
"""

import numpy as np

NAME = "python"


def sandwich(m, left, right):
    out = np.kron(m, np.eye(right, dtype=np.complex128))
    return np.kron(np.eye(left, dtype=np.complex128), out)


def grid_embed(blocks, left, inner, right):
    g = blocks.shape[0]
    eye = np.eye(inner, dtype=np.complex128)
    grid = np.block([[np.kron(eye, blocks[i, j]) for j in range(g)] for i in range(g)])
    return sandwich(grid, left, right)


def matmul(a, b):
    return a @ b


def trace_product(a, b):
    return complex(np.einsum("ij,ji->", a, b))
