"""Zero-sum constants of finite abelian groups and a certified computer proof
for Z_3 + Z_3n + Z_3n."""

__version__ = "0.1.0"
