"""Training pipeline for the skatpimc card-location inference network.

Consumes the engine's text game records and produces binary weight
files it can load; the engine itself is only invoked through its
command line (``skatpimc gen-data``).  The record format, feature
encoding, and weight-file format are re-implemented here from their
specifications and held to bit-for-bit conformance by the test suite.
"""

__version__ = "0.1.0"
