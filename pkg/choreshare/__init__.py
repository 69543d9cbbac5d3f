"""Maximin-share allocation of chores under bin-packing and job-scheduling costs."""

__version__ = "1.0.0"
