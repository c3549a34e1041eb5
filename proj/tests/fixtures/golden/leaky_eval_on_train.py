import pandas as pd
from sklearn.naive_bayes import GaussianNB

df = pd.read_csv("iris.csv")
y = df["species"]
X = df.drop("species", axis=1)
nb = GaussianNB()
nb.fit(X, y)
nb.score(X, y)
