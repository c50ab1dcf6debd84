"""Cluster algebras of tame type and their cluster-category models."""
