"""Importer tests"""
