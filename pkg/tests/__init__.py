"""
Tests for the spamnet image-spam pipeline.
"""
