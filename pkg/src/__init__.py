"""LDGM syndrome-measurement codes for QLDPC stabilizer codes."""

__version__ = "0.1.0"
