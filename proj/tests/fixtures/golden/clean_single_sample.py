import pandas as pd
from sklearn.model_selection import train_test_split
from sklearn.linear_model import LinearRegression

df = pd.read_csv("houses.csv")
y = df["price"]
X = df.drop("price", axis=1)
X_train, X_test, y_train, y_test = train_test_split(X, y)
reg = LinearRegression()
reg.fit(X_train, y_train)
reg.score(X_test, y_test)
one_house = X_test[0:1]
reg.predict(one_house)
reg.predict([[3, 1200, 2, 1987]])
