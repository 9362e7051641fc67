"""entropyflow 測試套件"""
