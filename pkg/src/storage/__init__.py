"""Certificate models and their serialization"""
