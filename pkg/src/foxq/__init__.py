"""Exact verification of Fox and augmentation quotients of finite semidirect products."""

__version__ = "0.1.0"
