import pandas as pd
from sklearn.model_selection import train_test_split
from sklearn.ensemble import ExtraTreesClassifier

df = pd.read_csv("visits.csv")
y = df["converted"]
X = df.drop("converted", axis=1)
X_train, X_test, y_train, y_test = train_test_split(X, y)
persona = X_train.groupby("segment").mean()
print(persona)
model = ExtraTreesClassifier()
model.fit(X_train, y_train)
model.score(X_test, y_test)
