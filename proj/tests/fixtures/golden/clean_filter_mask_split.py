import pandas as pd
from sklearn.ensemble import RandomForestRegressor

df = pd.read_csv("sales.csv")
train = df[df.year < 2018]
test = df[df.year >= 2018]
y_train = train["revenue"]
X_train = train.drop("revenue", axis=1)
y_test = test["revenue"]
X_test = test.drop("revenue", axis=1)
model = RandomForestRegressor()
model.fit(X_train, y_train)
model.score(X_test, y_test)
