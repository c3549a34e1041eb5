import pandas as pd
from sklearn.model_selection import train_test_split
from sklearn.linear_model import Lasso

df = pd.read_csv("energy.csv")
y = df["load"]
X = df.drop("load", axis=1)
X_train, X_test, y_train, y_test = train_test_split(X, y)
fill = X_train.mean()
X_train = X_train.fillna(fill)
model = Lasso()
model.fit(X_train, y_train)
model.score(X_test, y_test)
