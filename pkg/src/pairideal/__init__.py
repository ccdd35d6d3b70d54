"""Binomial edge ideals of pairs of graphs."""
