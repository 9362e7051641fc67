"""entropyflow:熱流下 Rényi / Tsallis 熵導數的符號推導與驗證"""

__version__ = "0.1.0"
