"""Unit tests for logging module."""

