"""Corona-graph resistance toolkit.

Builds R-graphs and their vertex/edge corona products, computes resistance
distances and Kirchhoff indices two independent ways (structured block
inverses versus a brute-force Laplacian group-inverse oracle), and
cross-validates the two routes.
"""

__version__ = "0.1.0"
