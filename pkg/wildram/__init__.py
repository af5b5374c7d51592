# Wildly ramified power series: residue indices, ramification and verification
__version__ = "0.1.0"
