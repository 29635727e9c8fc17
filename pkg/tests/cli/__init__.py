"""Tests for config, exporters and the command line"""
