# Polecenia CLI
