"""Compact adjacency labeling schemes for geometric graph families."""
