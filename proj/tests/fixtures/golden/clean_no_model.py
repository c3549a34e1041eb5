import pandas as pd

df = pd.read_csv("weather.csv")
df = df.dropna()
df["tmax_c"] = (df["tmax"] - 32) * 5 / 9
summary = df.describe()
print(summary)
