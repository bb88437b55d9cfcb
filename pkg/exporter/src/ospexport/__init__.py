"""Exporters that bridge pretrained (or synthetic) models to the OSPT/OSPE
binary container formats consumed by the core toolkit."""

__version__ = "0.1.0"
