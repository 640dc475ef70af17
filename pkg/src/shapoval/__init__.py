"""Exact computation of Weyl groupoids and Shapovalov determinants for Drinfeld doubles."""
