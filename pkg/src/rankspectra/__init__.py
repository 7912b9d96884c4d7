"""Rank-weight spectra of F_{q^m}-linear codes."""
