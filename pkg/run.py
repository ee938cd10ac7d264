from circulant_qsym import start

# =========================
# ENTRY POINT
# =========================

if __name__ == "__main__":
    start()
