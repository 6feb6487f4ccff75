# Pakiet fockflow: logika SLLM, diagramy, obwody, trening
