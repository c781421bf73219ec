"""Toolkit for the classical resource theory of nonuniformity."""
